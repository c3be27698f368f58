#pragma once

// Fair split tree and t-well-separated pair decomposition.
//
// A t-WSPD of X is a family of pairs {A_k, B_k} of disjoint subsets of X such that every
// unordered pair of distinct points lies in some A_k x B_k, and
//     setDistance(A_k, B_k) >= t * max(diam A_k, diam B_k).
// Pair sides are split-tree nodes, i.e. contiguous ranges of the tree's point order.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccoll/metric.hpp"

namespace ccoll {

struct SplitNode {
    std::uint32_t begin = 0;  // range in SplitTree::order()
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t representative = 0;  // lowest point index in the subtree
    std::int32_t splitAxis = -1;
    double splitValue = 0.0;

    bool isLeaf() const noexcept { return left < 0; }
    std::uint32_t size() const noexcept { return end - begin; }
};

class SplitTree {
public:
    std::size_t dim() const noexcept { return dim_; }
    std::size_t nodeCount() const noexcept { return nodes_.size(); }
    std::size_t pointCount() const noexcept { return order_.size(); }
    static constexpr std::uint32_t root() noexcept { return 0; }

    const SplitNode& node(std::uint32_t i) const { return nodes_.at(i); }
    const std::vector<SplitNode>& nodes() const noexcept { return nodes_; }
    const std::vector<std::uint32_t>& order() const noexcept { return order_; }
    std::span<const std::uint32_t> pointsOf(std::uint32_t i) const;

    /// Tight axis-aligned bounding box of the node's points.
    PointView boxLow(std::uint32_t i) const noexcept { return {lo_.data() + i * dim_, dim_}; }
    PointView boxHigh(std::uint32_t i) const noexcept { return {hi_.data() + i * dim_, dim_}; }

private:
    friend SplitTree buildSplitTree(const PointSet& x);

    std::size_t dim_ = 0;
    std::vector<SplitNode> nodes_;
    std::vector<std::uint32_t> order_;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// Splits every box at the midpoint of its longest side until each leaf holds one point.
SplitTree buildSplitTree(const PointSet& x);

struct WellSeparatedPair {
    std::uint32_t nodeA;
    std::uint32_t nodeB;
    std::uint32_t repA;  // representative a_k: lowest point index of side A
    std::uint32_t repB;
};

struct WspdSet {
    std::vector<WellSeparatedPair> pairs;
    double separation = 1.0;

    std::size_t size() const noexcept { return pairs.size(); }
};

/// Callahan-Kosaraju pairing driven by certified box bounds: a pair is emitted when
/// (box gap lower bound) >= t * max(box diameter upper bounds), otherwise the side with
/// the larger box diameter is split.
WspdSet extractWspd(const SplitTree& tree, double t, const NormSpec& norm);

struct WspdValidation {
    bool subsets = true;      // (a)
    bool disjoint = true;     // (b)
    bool coverage = true;     // (c)
    bool separation = true;   // (d)
    std::optional<std::string> counterexample;

    bool ok() const noexcept { return subsets && disjoint && coverage && separation; }
};

/// Brute-force check of all four WSPD properties; quadratic in n.
WspdValidation validateWspd(const WspdSet& wspd, const SplitTree& tree, const PointSet& x, double t,
                            const NormSpec& norm);

}  // namespace ccoll
