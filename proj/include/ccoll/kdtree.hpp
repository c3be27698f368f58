#pragma once

// Static bucket kd-tree with tight node boxes. Used for nearest-center queries on
// covering templates and as the explicit-point layer of the best-factor search.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "ccoll/metric.hpp"

namespace ccoll {

class KdTree {
public:
    struct Node {
        std::uint32_t begin;
        std::uint32_t end;
        std::int32_t left;
        std::int32_t right;
        bool isLeaf() const noexcept { return left < 0; }
    };

    KdTree() = default;
    explicit KdTree(const PointMatrix& points, std::uint32_t leafSize = 8);

    bool empty() const noexcept { return nodes_.empty(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    /// Point indices, grouped so that each node owns [begin, end).
    const std::vector<std::uint32_t>& order() const noexcept { return order_; }
    const double* boxLow(std::uint32_t node) const noexcept { return lo_.data() + node * dim_; }
    const double* boxHigh(std::uint32_t node) const noexcept { return hi_.data() + node * dim_; }

    /// Nearest point under `metric` (lowest index on ties) and its distance.
    template <class Metric>
    std::pair<std::uint32_t, double> nearest(const PointMatrix& points, PointView q, const Metric& metric) const;

private:
    std::size_t dim_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// Lower bound on the distance from q to any point of the box [lo, hi].
template <class Metric>
double boxGapLowerBound(const double* q, const double* lo, const double* hi, std::size_t d, const Metric& metric,
                        double* scratch) {
    for (std::size_t a = 0; a < d; ++a) {
        const double below = lo[a] - q[a];
        const double above = q[a] - hi[a];
        scratch[a] = below > 0.0 ? below : (above > 0.0 ? above : 0.0);
    }
    return metric.gapLowerBound(scratch, d);
}

template <class Metric>
std::pair<std::uint32_t, double> KdTree::nearest(const PointMatrix& points, PointView q, const Metric& metric) const {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    double bestDist = std::numeric_limits<double>::infinity();
    if (nodes_.empty()) return {best, bestDist};

    double gap[16];
    std::vector<double> gapHeap;
    double* scratch = gap;
    if (dim_ > 16) {
        gapHeap.resize(dim_);
        scratch = gapHeap.data();
    }

    std::vector<std::pair<double, std::uint32_t>> stack;
    stack.emplace_back(0.0, 0);
    while (!stack.empty()) {
        auto [bound, id] = stack.back();
        stack.pop_back();
        if (bound > bestDist) continue;
        const Node& node = nodes_[id];
        if (node.isLeaf()) {
            for (std::uint32_t k = node.begin; k < node.end; ++k) {
                const std::uint32_t idx = order_[k];
                const double dd = metric.dist(points[idx].data(), q.data(), dim_);
                if (dd < bestDist || (dd == bestDist && idx < best)) {
                    bestDist = dd;
                    best = idx;
                }
            }
            continue;
        }
        const auto l = static_cast<std::uint32_t>(node.left);
        const auto r = static_cast<std::uint32_t>(node.right);
        const double bl = boxGapLowerBound(q.data(), boxLow(l), boxHigh(l), dim_, metric, scratch);
        const double br = boxGapLowerBound(q.data(), boxLow(r), boxHigh(r), dim_, metric, scratch);
        // Push the farther child first so the nearer one is explored next.
        if (bl <= br) {
            if (br <= bestDist) stack.emplace_back(br, r);
            if (bl <= bestDist) stack.emplace_back(bl, l);
        } else {
            if (bl <= bestDist) stack.emplace_back(bl, l);
            if (br <= bestDist) stack.emplace_back(br, r);
        }
    }
    return {best, bestDist};
}

}  // namespace ccoll
