#include "ccoll/wspd.hpp"

#include <algorithm>
#include <limits>

#include "ccoll/error.hpp"

namespace ccoll {

std::span<const std::uint32_t> SplitTree::pointsOf(std::uint32_t i) const {
    const SplitNode& n = nodes_.at(i);
    return {order_.data() + n.begin, n.size()};
}

SplitTree buildSplitTree(const PointSet& x) {
    const std::size_t n = x.size();
    const std::size_t d = x.dim();
    if (n > std::numeric_limits<std::int32_t>::max() / 2) throw InputError("point set too large for split tree");

    SplitTree tree;
    tree.dim_ = d;
    tree.order_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) tree.order_[i] = i;
    tree.nodes_.reserve(2 * n - 1);
    tree.lo_.reserve((2 * n - 1) * d);
    tree.hi_.reserve((2 * n - 1) * d);

    auto makeNode = [&](std::uint32_t begin, std::uint32_t end) {
        SplitNode node;
        node.begin = begin;
        node.end = end;
        node.representative = std::numeric_limits<std::uint32_t>::max();
        const std::size_t base = tree.lo_.size();
        tree.lo_.resize(base + d, std::numeric_limits<double>::infinity());
        tree.hi_.resize(base + d, -std::numeric_limits<double>::infinity());
        for (std::uint32_t k = begin; k < end; ++k) {
            const std::uint32_t idx = tree.order_[k];
            node.representative = std::min(node.representative, idx);
            const PointView p = x[idx];
            for (std::size_t a = 0; a < d; ++a) {
                tree.lo_[base + a] = std::min(tree.lo_[base + a], p[a]);
                tree.hi_[base + a] = std::max(tree.hi_[base + a], p[a]);
            }
        }
        tree.nodes_.push_back(node);
        return static_cast<std::uint32_t>(tree.nodes_.size() - 1);
    };

    makeNode(0, static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const std::uint32_t id = stack.back();
        stack.pop_back();
        const SplitNode cur = tree.nodes_[id];
        if (cur.size() <= 1) continue;

        std::size_t axis = 0;
        double longest = -1.0;
        for (std::size_t a = 0; a < d; ++a) {
            const double ext = tree.hi_[id * d + a] - tree.lo_[id * d + a];
            if (ext > longest) {
                longest = ext;
                axis = a;
            }
        }
        // Distinct points guarantee a positive extent on the longest axis.
        const double lo = tree.lo_[id * d + axis];
        const double hi = tree.hi_[id * d + axis];
        double mid = 0.5 * (lo + hi);
        auto first = tree.order_.begin() + cur.begin;
        auto last = tree.order_.begin() + cur.end;
        auto cut = std::stable_partition(first, last, [&](std::uint32_t i) { return x[i][axis] < mid; });
        if (cut == first || cut == last) {
            // lo and hi are adjacent doubles; the midpoint rounded onto one of them.
            mid = hi;
            cut = std::stable_partition(first, last, [&](std::uint32_t i) { return x[i][axis] < mid; });
        }
        const auto split = static_cast<std::uint32_t>(cut - tree.order_.begin());
        const std::uint32_t left = makeNode(cur.begin, split);
        const std::uint32_t right = makeNode(split, cur.end);
        SplitNode& node = tree.nodes_[id];
        node.left = static_cast<std::int32_t>(left);
        node.right = static_cast<std::int32_t>(right);
        node.splitAxis = static_cast<std::int32_t>(axis);
        node.splitValue = mid;
        stack.push_back(right);
        stack.push_back(left);
    }
    return tree;
}

namespace {

template <class Metric>
WspdSet extractWith(const SplitTree& tree, double t, const Metric& metric) {
    const std::size_t d = tree.dim();
    const std::size_t nodes = tree.nodeCount();

    std::vector<double> diamUpper(nodes);
    std::vector<double> ext(d);
    for (std::uint32_t i = 0; i < nodes; ++i) {
        for (std::size_t a = 0; a < d; ++a) ext[a] = tree.boxHigh(i)[a] - tree.boxLow(i)[a];
        diamUpper[i] = metric.extentUpperBound(ext.data(), d);
    }

    std::vector<double> gap(d);
    auto separated = [&](std::uint32_t u, std::uint32_t v) {
        const PointView ul = tree.boxLow(u), uh = tree.boxHigh(u);
        const PointView vl = tree.boxLow(v), vh = tree.boxHigh(v);
        for (std::size_t a = 0; a < d; ++a) gap[a] = std::max({0.0, vl[a] - uh[a], ul[a] - vh[a]});
        const double lower = metric.gapLowerBound(gap.data(), d);
        return lower >= t * std::max(diamUpper[u], diamUpper[v]);
    };

    WspdSet out;
    out.separation = t;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    for (std::uint32_t u = 0; u < nodes; ++u) {
        const SplitNode& node = tree.node(u);
        if (node.isLeaf()) continue;
        stack.emplace_back(static_cast<std::uint32_t>(node.left), static_cast<std::uint32_t>(node.right));
        while (!stack.empty()) {
            auto [v, w] = stack.back();
            stack.pop_back();
            if (separated(v, w)) {
                out.pairs.push_back({v, w, tree.node(v).representative, tree.node(w).representative});
                continue;
            }
            if (diamUpper[v] < diamUpper[w]) std::swap(v, w);
            const SplitNode& big = tree.node(v);
            if (big.isLeaf()) throw BuildError("WSPD recursion reached two unseparated leaves");
            stack.emplace_back(static_cast<std::uint32_t>(big.right), w);
            stack.emplace_back(static_cast<std::uint32_t>(big.left), w);
        }
    }
    return out;
}

}  // namespace

WspdSet extractWspd(const SplitTree& tree, double t, const NormSpec& norm) {
    if (!(t >= 1.0)) throw ParameterError("WSPD separation t must be at least 1");
    if (norm.kind() == NormKind::BlackBox) norm.lowerConstant(tree.dim());  // dimension check
    return norm.visit([&](const auto& metric) { return extractWith(tree, t, metric); });
}

WspdValidation validateWspd(const WspdSet& wspd, const SplitTree& tree, const PointSet& x, double t,
                            const NormSpec& norm) {
    WspdValidation report;
    const std::size_t n = x.size();
    auto fail = [&](bool WspdValidation::*flag, std::string why) {
        report.*flag = false;
        if (!report.counterexample) report.counterexample = std::move(why);
    };

    std::vector<char> covered(n * n, 0);
    std::vector<int> side(n, 0);
    for (std::size_t k = 0; k < wspd.pairs.size(); ++k) {
        const WellSeparatedPair& pr = wspd.pairs[k];
        const std::string tag = "pair " + std::to_string(k);
        if (pr.nodeA >= tree.nodeCount() || pr.nodeB >= tree.nodeCount()) {
            fail(&WspdValidation::subsets, tag + " references a node outside the tree");
            continue;
        }
        const auto a = tree.pointsOf(pr.nodeA);
        const auto b = tree.pointsOf(pr.nodeB);
        bool inRange = true;
        for (std::uint32_t i : a) inRange = inRange && i < n;
        for (std::uint32_t i : b) inRange = inRange && i < n;
        if (!inRange || a.empty() || b.empty() || std::ranges::find(a, pr.repA) == a.end() ||
            std::ranges::find(b, pr.repB) == b.end()) {
            fail(&WspdValidation::subsets, tag + " has a side outside X or a foreign representative");
            continue;
        }

        for (std::uint32_t i : a) side[i] = 1;
        for (std::uint32_t i : b) {
            if (side[i] == 1) fail(&WspdValidation::disjoint, tag + " shares point " + std::to_string(i));
        }
        for (std::uint32_t i : a) side[i] = 0;

        for (std::uint32_t i : a) {
            for (std::uint32_t j : b) {
                covered[i * n + j] = 1;
                covered[j * n + i] = 1;
            }
        }

        PointMatrix pa(x.dim()), pb(x.dim());
        for (std::uint32_t i : a) pa.push_back(x[i]);
        for (std::uint32_t i : b) pb.push_back(x[i]);
        const double gapAB = setDistance(pa, pb, norm);
        const double diam = std::max(setDiameter(pa, norm), setDiameter(pb, norm));
        if (!withinBound(t * diam, gapAB)) {
            fail(&WspdValidation::separation, tag + ": dist(A,B) = " + std::to_string(gapAB) + " < t * diam = " +
                                                  std::to_string(t * diam));
        }
    }

    for (std::size_t i = 0; i < n && report.coverage; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!covered[i * n + j]) {
                fail(&WspdValidation::coverage,
                     "points " + std::to_string(i) + " and " + std::to_string(j) + " are not covered by any pair");
                break;
            }
        }
    }
    return report;
}

}  // namespace ccoll
