#pragma once

// Discrete center-based solvers over a candidate collection, and the continuous
// oracles (smallest enclosing ball, exhaustive grid search) used to measure them.
//
// Objectives range over the input multiset: a point of multiplicity m counts m times,
// and per-point costs index the expanded rows (PointSet::expanded()).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccoll/collection.hpp"
#include "ccoll/metric.hpp"

namespace ccoll {

enum class ObjectiveKind { KCenter, KMedian, KMeans, MVariance, Problem1, Problem2 };

std::string_view objectiveName(ObjectiveKind kind) noexcept;
/// Accepts "kcenter", "kmedian", "kmeans", "mvariance", "p1", "p2".
std::optional<ObjectiveKind> parseObjective(std::string_view name) noexcept;

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::KMedian;
    std::size_t k = 1;
    std::size_t m = 0;  // points kept (mvariance, problem1)
    /// k x n row-major unit costs f_ij and exponents g_ij (problem1/2); empty means
    /// f = 1 and g = 1.
    std::vector<double> unitCosts;
    std::vector<double> exponents;
    std::vector<std::size_t> cardinalities;  // m_1..m_k (problem2)

    static ObjectiveSpec kCenter(std::size_t k);
    static ObjectiveSpec kMedian(std::size_t k);
    static ObjectiveSpec kMeans(std::size_t k);
    static ObjectiveSpec mVariance(std::size_t m);
    static ObjectiveSpec problem1(std::size_t k, std::size_t m, std::vector<double> f = {},
                                  std::vector<double> g = {});
    static ObjectiveSpec problem2(std::vector<std::size_t> cards, std::vector<double> f = {},
                                  std::vector<double> g = {});

    /// g with mu(1+eps) = (1+eps)^g: 1 for k-center/median, 2 for k-means/m-variance,
    /// max g_ij for problem1/2.
    double modulusExponent() const;
    double unitCost(std::size_t center, std::size_t point) const;
    double exponent(std::size_t center, std::size_t point) const;
    /// f_ij * distance^g_ij, with 0^0 = 1.
    double cost(std::size_t center, std::size_t point, double distance) const;

    /// Throws InputError / ParameterError for an objective inconsistent with n points.
    void validate(std::size_t n) const;
};

inline constexpr std::int64_t kOutlier = -1;

struct SolveResult {
    ObjectiveKind kind = ObjectiveKind::KMedian;
    double value = 0.0;
    PointMatrix centers;
    std::vector<std::size_t> candidateIndices;  // empty for oracle results
    std::vector<std::int64_t> assignment;       // per expanded point: center slot or kOutlier
    std::optional<double> guaranteedRatio;      // (1+eps)^g for a collection built at eps
    double slack = 0.0;                         // oracle results: value - slack <= optimum
    double tuples = 0.0;                        // tuples (or grid nodes) examined
    double wallMs = 0.0;
};

/// Objective of a fixed set of centers and assignment (k-center: max, otherwise sum
/// over assigned points of f_ij dist^g_ij).
double evaluateAssignment(const PointMatrix& points, const PointMatrix& centers,
                          const std::vector<std::int64_t>& assignment, const ObjectiveSpec& objective,
                          const NormSpec& norm);

inline constexpr double kTupleBudget = 1e9;

struct SolveOptions {
    int threads = 1;
};

/// Exact optimum over candidate tuples: combinations without repetition for the
/// symmetric objectives (k <= N), ordered tuples with repetition for problem1/2. Ties go
/// to the lexicographically smallest tuple. Throws ResourceError beyond kTupleBudget
/// tuples.
SolveResult solveDiscrete(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& objective,
                          const NormSpec& norm, const SolveOptions& options = {});
/// solveDiscrete restricted to the problem1 / problem2 kinds.
SolveResult solveProblem1(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& spec,
                          const NormSpec& norm, const SolveOptions& options = {});
SolveResult solveProblem2(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& spec,
                          const NormSpec& norm, const SolveOptions& options = {});

/// Minimum-cost assignment of exactly cards[i] points to center i, the rest unassigned
/// at no cost; costs is k x n row-major. Successive shortest paths on the
/// source/points/centers/sink network. Returns the cost; fills assignment (size n).
double transportationCost(std::span<const double> costs, std::size_t k, std::size_t n,
                          std::span<const std::size_t> cards, std::vector<std::int64_t>& assignment);

struct OneCenter {
    Point center;
    double radius = 0.0;
    std::vector<std::size_t> support;  // input indices on the boundary
};

/// Smallest enclosing Euclidean ball (randomized incremental, move-to-front).
/// Throws UnsupportedError for other norms.
OneCenter exactOneCenter(const PointSet& x, const NormSpec& norm, std::uint64_t seed = 0);

inline constexpr double kGridNodeBudget = 4e6;
inline constexpr double kGridSubsetBudget = 2e9;

/// Exhaustive search over center tuples on a uniform grid (step = resolution times the
/// largest bounding-box extent) over the bounding box inflated 1.5x about its center.
/// The returned value bounds the continuous optimum from above; value - slack bounds it
/// from below. Requires d <= 2 and k <= 2.
SolveResult gridBruteOracle(const PointSet& x, const ObjectiveSpec& objective, double resolution,
                            const NormSpec& norm);

/// Candidate cost rows for a tuple scan: row (c, slot) holds f_slot,j dist(x_j, c)^g_slot,j
/// over the expanded points j. Symmetric objectives share one row across slots. Rows
/// are precomputed when k > 1 and computed on the fly for k = 1.
class TupleScan {
public:
    TupleScan(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& objective,
              const NormSpec& norm);

    std::size_t candidateCount() const noexcept { return candidates_->size(); }
    std::size_t pointCount() const noexcept { return points_.size(); }
    std::size_t k() const noexcept { return objective_.k; }
    bool ordered() const noexcept { return ordered_; }
    double tupleCount() const noexcept { return tupleCount_; }
    const ObjectiveSpec& objective() const noexcept { return objective_; }
    const PointMatrix& points() const noexcept { return points_; }
    const CentersCollection& candidates() const noexcept { return *candidates_; }
    const NormSpec& norm() const noexcept { return norm_; }

    /// Cost row of candidate c in slot i; `scratch` (dim + n doubles) backs rows that
    /// are not precomputed.
    const double* row(std::size_t c, std::size_t slot, std::vector<double>& scratch) const;

private:
    const CentersCollection* candidates_;
    PointMatrix points_;
    ObjectiveSpec objective_;
    NormSpec norm_;
    bool ordered_ = false;
    std::size_t slots_ = 1;  // distinct rows per candidate
    double tupleCount_ = 0.0;
    std::vector<double> table_;
};

struct TupleBest {
    double value = 0.0;
    std::vector<std::uint32_t> tuple;
};

namespace kernels {

TupleBest scanTuplesSerial(const TupleScan& scan);
TupleBest scanTuplesOmp(const TupleScan& scan, int threads);

}  // namespace kernels

}  // namespace ccoll
