#include "ccoll/kdtree.hpp"

#include <algorithm>

#include "ccoll/error.hpp"

namespace ccoll {

KdTree::KdTree(const PointMatrix& points, std::uint32_t leafSize) : dim_(points.dim()) {
    const std::size_t n = points.size();
    if (n == 0) return;
    if (n >= std::numeric_limits<std::uint32_t>::max()) throw InputError("too many points for a kd-tree");
    if (leafSize == 0) leafSize = 1;

    order_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) order_[i] = i;

    auto makeNode = [&](std::uint32_t begin, std::uint32_t end) {
        nodes_.push_back({begin, end, -1, -1});
        const std::size_t base = lo_.size();
        lo_.resize(base + dim_, std::numeric_limits<double>::infinity());
        hi_.resize(base + dim_, -std::numeric_limits<double>::infinity());
        for (std::uint32_t k = begin; k < end; ++k) {
            const PointView p = points[order_[k]];
            for (std::size_t a = 0; a < dim_; ++a) {
                lo_[base + a] = std::min(lo_[base + a], p[a]);
                hi_[base + a] = std::max(hi_[base + a], p[a]);
            }
        }
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    };

    makeNode(0, static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const std::uint32_t id = stack.back();
        stack.pop_back();
        const Node cur = nodes_[id];
        if (cur.end - cur.begin <= leafSize) continue;

        std::size_t axis = 0;
        double widest = -1.0;
        for (std::size_t a = 0; a < dim_; ++a) {
            const double ext = hi_[id * dim_ + a] - lo_[id * dim_ + a];
            if (ext > widest) {
                widest = ext;
                axis = a;
            }
        }
        if (widest <= 0.0) continue;  // all points coincide

        const std::uint32_t mid = cur.begin + (cur.end - cur.begin) / 2;
        std::nth_element(order_.begin() + cur.begin, order_.begin() + mid, order_.begin() + cur.end,
                         [&](std::uint32_t a, std::uint32_t b) {
                             const double ca = points[a][axis], cb = points[b][axis];
                             return ca < cb || (ca == cb && a < b);
                         });
        const std::uint32_t left = makeNode(cur.begin, mid);
        const std::uint32_t right = makeNode(mid, cur.end);
        nodes_[id].left = static_cast<std::int32_t>(left);
        nodes_[id].right = static_cast<std::int32_t>(right);
        stack.push_back(right);
        stack.push_back(left);
    }
}

}  // namespace ccoll
