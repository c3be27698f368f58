#include "ccoll/solve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "ccoll/error.hpp"
#include "ccoll/rng.hpp"

namespace ccoll {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool isSymmetric(ObjectiveKind kind) noexcept {
    return kind != ObjectiveKind::Problem1 && kind != ObjectiveKind::Problem2;
}

bool keepsM(ObjectiveKind kind) noexcept {
    return kind == ObjectiveKind::MVariance || kind == ObjectiveKind::Problem1;
}

double power(double base, double g) {
    if (g == 1.0) return base;
    if (g == 2.0) return base * base;
    return std::pow(base, g);
}

double elapsedMs(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void checkDim(const PointSet& x, std::size_t dim) {
    if (x.size() == 0) throw InputError("input point set is empty");
    if (x.dim() != dim) {
        throw InputError("dimension mismatch: input has d=" + std::to_string(x.dim()) + ", candidates have d=" +
                         std::to_string(dim));
    }
}

// Sum of the m smallest entries, added in ascending order.
double sumSmallest(std::vector<double>& values, std::size_t m) {
    if (values.size() <= 16) {
        for (std::size_t i = 1; i < values.size(); ++i) {
            const double v = values[i];
            std::size_t j = i;
            for (; j > 0 && values[j - 1] > v; --j) values[j] = values[j - 1];
            values[j] = v;
        }
    } else {
        std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m - 1), values.end());
        std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += values[j];
    return sum;
}

// Successive shortest paths for the transportation problem. The residual network of
// source -> points -> centers -> sink is kept implicitly through the current assignment;
// each augmentation runs Bellman-Ford over it and moves one unit to the cheapest
// center with spare capacity.
class Transport {
public:
    double solve(std::span<const double> costs, std::size_t k, std::size_t n, std::span<const std::size_t> cards,
                 std::vector<std::int64_t>* assignment) {
        assign_.assign(n, kNone);
        used_.assign(k, 0);
        distPoint_.resize(n);
        distCenter_.resize(k);
        reachedFrom_.resize(k);
        std::size_t units = 0;
        for (std::size_t c : cards) units += c;
        for (std::size_t u = 0; u < units; ++u) {
            for (std::size_t j = 0; j < n; ++j) distPoint_[j] = assign_[j] == kNone ? 0.0 : kInf;
            std::fill(distCenter_.begin(), distCenter_.end(), kInf);
            for (std::size_t round = 0; round <= n + k; ++round) {
                bool changed = false;
                for (std::size_t i = 0; i < k; ++i) {
                    const double* row = costs.data() + i * n;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (assign_[j] == i || distPoint_[j] == kInf) continue;
                        const double nd = distPoint_[j] + row[j];
                        if (nd < distCenter_[i]) {
                            distCenter_[i] = nd;
                            reachedFrom_[i] = j;
                            changed = true;
                        }
                    }
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const std::size_t owner = assign_[j];
                    if (owner == kNone || distCenter_[owner] == kInf) continue;
                    const double nd = distCenter_[owner] - costs[owner * n + j];
                    if (nd < distPoint_[j]) {
                        distPoint_[j] = nd;
                        changed = true;
                    }
                }
                if (!changed) break;
            }
            std::size_t target = kNone;
            for (std::size_t i = 0; i < k; ++i) {
                if (used_[i] < cards[i] && distCenter_[i] < kInf &&
                    (target == kNone || distCenter_[i] < distCenter_[target])) {
                    target = i;
                }
            }
            if (target == kNone) throw InputError("cardinalities cannot be met");
            ++used_[target];
            // Walk back: each point on the path moves to the center it reaches.
            for (std::size_t i = target;;) {
                const std::size_t j = reachedFrom_[i];
                const std::size_t previous = assign_[j];
                assign_[j] = i;
                if (previous == kNone) break;
                i = previous;
            }
        }
        if (assignment) {
            assignment->assign(n, kOutlier);
            for (std::size_t j = 0; j < n; ++j) {
                if (assign_[j] != kNone) (*assignment)[j] = static_cast<std::int64_t>(assign_[j]);
            }
        }
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (assign_[j] != kNone) total += costs[assign_[j] * n + j];
        }
        return total;
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::vector<std::size_t> assign_;
    std::vector<std::size_t> used_;
    std::vector<double> distPoint_;
    std::vector<double> distCenter_;
    std::vector<std::size_t> reachedFrom_;
};

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return std::round(r);
}

}  // namespace

std::string_view objectiveName(ObjectiveKind kind) noexcept {
    switch (kind) {
        case ObjectiveKind::KCenter: return "kcenter";
        case ObjectiveKind::KMedian: return "kmedian";
        case ObjectiveKind::KMeans: return "kmeans";
        case ObjectiveKind::MVariance: return "mvariance";
        case ObjectiveKind::Problem1: return "p1";
        case ObjectiveKind::Problem2: return "p2";
    }
    return "kmedian";
}

std::optional<ObjectiveKind> parseObjective(std::string_view name) noexcept {
    for (auto kind : {ObjectiveKind::KCenter, ObjectiveKind::KMedian, ObjectiveKind::KMeans, ObjectiveKind::MVariance,
                      ObjectiveKind::Problem1, ObjectiveKind::Problem2}) {
        if (objectiveName(kind) == name) return kind;
    }
    return std::nullopt;
}

ObjectiveSpec ObjectiveSpec::kCenter(std::size_t k) { return {ObjectiveKind::KCenter, k, 0, {}, {}, {}}; }
ObjectiveSpec ObjectiveSpec::kMedian(std::size_t k) { return {ObjectiveKind::KMedian, k, 0, {}, {}, {}}; }
ObjectiveSpec ObjectiveSpec::kMeans(std::size_t k) { return {ObjectiveKind::KMeans, k, 0, {}, {}, {}}; }
ObjectiveSpec ObjectiveSpec::mVariance(std::size_t m) { return {ObjectiveKind::MVariance, 1, m, {}, {}, {}}; }

ObjectiveSpec ObjectiveSpec::problem1(std::size_t k, std::size_t m, std::vector<double> f, std::vector<double> g) {
    return {ObjectiveKind::Problem1, k, m, std::move(f), std::move(g), {}};
}

ObjectiveSpec ObjectiveSpec::problem2(std::vector<std::size_t> cards, std::vector<double> f, std::vector<double> g) {
    const std::size_t k = cards.size();
    const std::size_t m = std::accumulate(cards.begin(), cards.end(), std::size_t{0});
    return {ObjectiveKind::Problem2, k, m, std::move(f), std::move(g), std::move(cards)};
}

double ObjectiveSpec::modulusExponent() const {
    switch (kind) {
        case ObjectiveKind::KCenter:
        case ObjectiveKind::KMedian: return 1.0;
        case ObjectiveKind::KMeans:
        case ObjectiveKind::MVariance: return 2.0;
        default: break;
    }
    if (exponents.empty()) return 1.0;
    return *std::max_element(exponents.begin(), exponents.end());
}

double ObjectiveSpec::unitCost(std::size_t center, std::size_t point) const {
    if (isSymmetric(kind) || unitCosts.empty()) return 1.0;
    return unitCosts[center * (unitCosts.size() / k) + point];
}

double ObjectiveSpec::exponent(std::size_t center, std::size_t point) const {
    if (kind == ObjectiveKind::KMeans || kind == ObjectiveKind::MVariance) return 2.0;
    if (isSymmetric(kind) || exponents.empty()) return 1.0;
    return exponents[center * (exponents.size() / k) + point];
}

double ObjectiveSpec::cost(std::size_t center, std::size_t point, double distance) const {
    return unitCost(center, point) * power(distance, exponent(center, point));
}

void ObjectiveSpec::validate(std::size_t n) const {
    if (k == 0) throw ParameterError("k must be at least 1");
    if (keepsM(kind) && (m == 0 || m > n)) {
        throw InputError("m must lie in [1, n]; got m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
    if (kind == ObjectiveKind::Problem2) {
        if (cardinalities.size() != k) throw InputError("problem2 needs one cardinality per center");
        const std::size_t total = std::accumulate(cardinalities.begin(), cardinalities.end(), std::size_t{0});
        if (total == 0 || total > n) {
            throw InputError("cardinalities sum to " + std::to_string(total) + ", which must lie in [1, n=" +
                             std::to_string(n) + "]");
        }
    }
    auto checkTable = [&](const std::vector<double>& t, const char* what) {
        if (t.empty()) return;
        if (isSymmetric(kind)) throw InputError(std::string(what) + " apply only to problem1/problem2");
        if (t.size() != k * n) {
            throw InputError(std::string(what) + " must have k x n = " + std::to_string(k * n) + " entries, got " +
                             std::to_string(t.size()));
        }
        for (double v : t) {
            if (!std::isfinite(v) || v < 0.0) throw InputError(std::string(what) + " must be finite and >= 0");
        }
    };
    checkTable(unitCosts, "unit costs");
    checkTable(exponents, "exponents");
}

double evaluateAssignment(const PointMatrix& points, const PointMatrix& centers,
                          const std::vector<std::int64_t>& assignment, const ObjectiveSpec& objective,
                          const NormSpec& norm) {
    if (assignment.size() != points.size()) throw InputError("assignment size differs from point count");
    double value = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (assignment[j] == kOutlier) continue;
        const auto slot = static_cast<std::size_t>(assignment[j]);
        if (slot >= centers.size()) throw InputError("assignment refers to a missing center");
        const double c = objective.cost(slot, j, norm.distance(points[j], centers[slot]));
        value = objective.kind == ObjectiveKind::KCenter ? std::max(value, c) : value + c;
    }
    return value;
}

TupleScan::TupleScan(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& objective,
                     const NormSpec& norm)
    : candidates_(&candidates), points_(x.expanded()), objective_(objective), norm_(norm) {
    checkDim(x, candidates.dim());
    const std::size_t n = points_.size();
    objective_.validate(n);
    const std::size_t count = candidates.size();
    const std::size_t k = objective_.k;
    ordered_ = !isSymmetric(objective_.kind);
    if (ordered_) {
        tupleCount_ = std::pow(static_cast<double>(count), static_cast<double>(k));
    } else {
        if (k > count) {
            throw InputError("k=" + std::to_string(k) + " exceeds the candidate count " + std::to_string(count));
        }
        tupleCount_ = binomial(count, k);
    }
    if (tupleCount_ > kTupleBudget) {
        throw ResourceError("tuple enumeration needs " + compact(tupleCount_) + " tuples, budget is " +
                                compact(kTupleBudget),
                            tupleCount_, kTupleBudget);
    }
    slots_ = ordered_ ? k : 1;
    if (k > 1) {
        table_.resize(count * slots_ * n);
        const std::size_t d = candidates.dim();
        Point c(d);
        for (std::size_t ci = 0; ci < count; ++ci) {
            candidates.candidate(ci, c);
            for (std::size_t s = 0; s < slots_; ++s) {
                double* row = table_.data() + (ci * slots_ + s) * n;
                for (std::size_t j = 0; j < n; ++j) row[j] = objective_.cost(s, j, norm_.distance(points_[j], c));
            }
        }
    }
}

const double* TupleScan::row(std::size_t c, std::size_t slot, std::vector<double>& scratch) const {
    const std::size_t n = points_.size();
    const std::size_t s = ordered_ ? slot : 0;
    if (!table_.empty()) return table_.data() + (c * slots_ + s) * n;
    const std::size_t d = candidates_->dim();
    scratch.resize(d + n);
    std::span<double> point(scratch.data(), d);
    candidates_->candidate(c, point);
    double* out = scratch.data() + d;
    for (std::size_t j = 0; j < n; ++j) out[j] = objective_.cost(s, j, norm_.distance(points_[j], point));
    return out;
}

namespace {

bool tupleBefore(double value, const std::vector<std::uint32_t>& tuple, const TupleBest& best) {
    if (value != best.value) return value < best.value;
    return tuple < best.tuple;
}

// Enumerates every tuple starting with `first` in lexicographic order.
class TupleWalker {
public:
    explicit TupleWalker(const TupleScan& scan)
        : scan_(scan),
          n_(scan.pointCount()),
          k_(scan.k()),
          kind_(scan.objective().kind),
          tuple_(k_),
          prefix_((k_ + 1) * n_),
          rows_(k_),
          scratch_(k_),
          work_(n_),
          costs_(k_ * n_) {}

    void walk(std::size_t first, TupleBest& best) {
        tuple_[0] = static_cast<std::uint32_t>(first);
        descend(0, best);
    }

private:
    void descend(std::size_t slot, TupleBest& best) {
        const double* row = scan_.row(tuple_[slot], slot, scratch_[slot]);
        rows_[slot] = row;
        const double* prev = prefix_.data() + slot * n_;
        double* cur = prefix_.data() + (slot + 1) * n_;
        if (slot == 0) {
            std::copy(row, row + n_, cur);
        } else {
            for (std::size_t j = 0; j < n_; ++j) cur[j] = std::min(prev[j], row[j]);
        }
        if (slot + 1 == k_) {
            offer(cur, best);
            return;
        }
        const std::size_t count = scan_.candidateCount();
        const std::size_t start = scan_.ordered() ? 0 : tuple_[slot] + 1;
        const std::size_t stop = scan_.ordered() ? count : count - (k_ - slot - 2);
        if (slot + 2 < k_) {
            for (std::size_t c = start; c < stop; ++c) {
                tuple_[slot + 1] = static_cast<std::uint32_t>(c);
                descend(slot + 1, best);
            }
            return;
        }
        // Last slot: rows come straight from the table.
        double* last = prefix_.data() + k_ * n_;
        for (std::size_t c = start; c < stop; ++c) {
            tuple_[k_ - 1] = static_cast<std::uint32_t>(c);
            const double* r = scan_.row(c, k_ - 1, scratch_[k_ - 1]);
            rows_[k_ - 1] = r;
            for (std::size_t j = 0; j < n_; ++j) last[j] = std::min(cur[j], r[j]);
            offer(last, best);
        }
    }

    void offer(const double* mins, TupleBest& best) {
        const double v = value(mins, best.value);
        if (v < best.value || (v == best.value && best.tuple.empty())) {
            best.value = v;
            best.tuple = tuple_;
        }
    }

    // Pruning must never drop a tie: the bounds are summed in a different order than
    // the exact value, so they must clear `bound` by more than the rounding error.
    static bool surelyAbove(double lower, double bound, double scale) {
        return lower - bound > 1e-12 * scale;
    }

    // Objective of the current tuple, or a value above `bound` once it cannot win.
    double value(const double* mins, double bound) {
        switch (kind_) {
            case ObjectiveKind::KCenter: {
                double v = 0.0;
                for (std::size_t j = 0; j < n_; ++j) v = std::max(v, mins[j]);
                return v;
            }
            case ObjectiveKind::KMedian:
            case ObjectiveKind::KMeans: {
                double v = 0.0;
                for (std::size_t j = 0; j < n_; ++j) {
                    v += mins[j];
                    if (v > bound) return v;
                }
                return v;
            }
            case ObjectiveKind::MVariance:
            case ObjectiveKind::Problem1: {
                // The n - m dropped points each cost at most the largest one.
                double total = 0.0, largest = 0.0;
                for (std::size_t j = 0; j < n_; ++j) {
                    total += mins[j];
                    largest = std::max(largest, mins[j]);
                }
                const double lower = total - static_cast<double>(n_ - scan_.objective().m) * largest;
                if (surelyAbove(lower, bound, total)) return lower;
                std::copy(mins, mins + n_, work_.begin());
                return sumSmallest(work_, scan_.objective().m);
            }
            case ObjectiveKind::Problem2: {
                // Every assigned point pays at least its cheapest center.
                std::copy(mins, mins + n_, work_.begin());
                const double lower = sumSmallest(work_, scan_.objective().m);
                if (surelyAbove(lower, bound, lower)) return lower;
                for (std::size_t i = 0; i < k_; ++i) std::copy(rows_[i], rows_[i] + n_, costs_.begin() + i * n_);
                return transport_.solve(costs_, k_, n_, scan_.objective().cardinalities, nullptr);
            }
        }
        return kInf;
    }

    const TupleScan& scan_;
    std::size_t n_;
    std::size_t k_;
    ObjectiveKind kind_;
    std::vector<std::uint32_t> tuple_;
    std::vector<double> prefix_;
    std::vector<const double*> rows_;
    std::vector<std::vector<double>> scratch_;
    std::vector<double> work_;
    std::vector<double> costs_;
    Transport transport_;
};

std::size_t firstSlotRange(const TupleScan& scan) {
    return scan.ordered() ? scan.candidateCount() : scan.candidateCount() - scan.k() + 1;
}

}  // namespace

namespace kernels {

TupleBest scanTuplesSerial(const TupleScan& scan) {
    TupleBest best{kInf, {}};
    TupleWalker walker(scan);
    const std::size_t range = firstSlotRange(scan);
    for (std::size_t first = 0; first < range; ++first) walker.walk(first, best);
    return best;
}

TupleBest scanTuplesOmp(const TupleScan& scan, int threads) {
    TupleBest best{kInf, {}};
    const auto range = static_cast<std::int64_t>(firstSlotRange(scan));
#pragma omp parallel num_threads(threads)
    {
        TupleBest local{kInf, {}};
        TupleWalker walker(scan);
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t first = 0; first < range; ++first) walker.walk(static_cast<std::size_t>(first), local);
#pragma omp critical
        {
            if (!local.tuple.empty() && (best.tuple.empty() || tupleBefore(local.value, local.tuple, best))) {
                best = std::move(local);
            }
        }
    }
    return best;
}

}  // namespace kernels

double transportationCost(std::span<const double> costs, std::size_t k, std::size_t n,
                          std::span<const std::size_t> cards, std::vector<std::int64_t>& assignment) {
    if (costs.size() != k * n || cards.size() != k) throw InputError("transportation sizes are inconsistent");
    std::size_t total = 0;
    for (std::size_t c : cards) total += c;
    if (total > n) throw InputError("cardinalities exceed the point count");
    Transport transport;
    return transport.solve(costs, k, n, cards, &assignment);
}

namespace {

// Assignment of the expanded points to the slots of a fixed center tuple.
std::vector<std::int64_t> assignPoints(const TupleScan& scan, const std::vector<std::uint32_t>& tuple) {
    const std::size_t n = scan.pointCount();
    const std::size_t k = tuple.size();
    std::vector<std::vector<double>> scratch(k);
    std::vector<const double*> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = scan.row(tuple[i], i, scratch[i]);
    std::vector<std::int64_t> assignment(n, kOutlier);
    const ObjectiveKind kind = scan.objective().kind;
    if (kind == ObjectiveKind::Problem2) {
        std::vector<double> costs(k * n);
        for (std::size_t i = 0; i < k; ++i) std::copy(rows[i], rows[i] + n, costs.begin() + i * n);
        transportationCost(costs, k, n, scan.objective().cardinalities, assignment);
        return assignment;
    }
    std::vector<double> best(n, kInf);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i][j] < best[j]) {
                best[j] = rows[i][j];
                assignment[j] = static_cast<std::int64_t>(i);
            }
        }
    }
    if (keepsM(kind)) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return best[a] < best[b]; });
        for (std::size_t r = scan.objective().m; r < n; ++r) assignment[order[r]] = kOutlier;
    }
    return assignment;
}

}  // namespace

SolveResult solveDiscrete(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& objective,
                          const NormSpec& norm, const SolveOptions& options) {
    if (options.threads < 1) throw ParameterError("thread count must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    const TupleScan scan(x, candidates, objective, norm);
    const TupleBest best =
        options.threads > 1 ? kernels::scanTuplesOmp(scan, options.threads) : kernels::scanTuplesSerial(scan);
    SolveResult result;
    result.kind = objective.kind;
    result.value = best.value;
    result.centers = PointMatrix(candidates.dim());
    for (std::uint32_t c : best.tuple) {
        result.candidateIndices.push_back(c);
        result.centers.push_back(candidates.candidate(c));
    }
    result.assignment = assignPoints(scan, best.tuple);
    if (candidates.info().epsilon > 0.0) {
        result.guaranteedRatio = std::pow(1.0 + candidates.info().epsilon, objective.modulusExponent());
    }
    result.tuples = scan.tupleCount();
    result.wallMs = elapsedMs(start);
    return result;
}

SolveResult solveProblem1(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& spec,
                          const NormSpec& norm, const SolveOptions& options) {
    if (spec.kind != ObjectiveKind::Problem1) throw ParameterError("solveProblem1 needs a problem1 objective");
    return solveDiscrete(x, candidates, spec, norm, options);
}

SolveResult solveProblem2(const PointSet& x, const CentersCollection& candidates, const ObjectiveSpec& spec,
                          const NormSpec& norm, const SolveOptions& options) {
    if (spec.kind != ObjectiveKind::Problem2) throw ParameterError("solveProblem2 needs a problem2 objective");
    return solveDiscrete(x, candidates, spec, norm, options);
}

namespace {

using Vec = Eigen::VectorXd;

struct EnclosingBall {
    Vec center;
    double radius2 = -1.0;  // negative: empty ball
    std::vector<std::size_t> support;
};

// Smallest ball with every support point on its boundary: the circumcenter within
// their affine hull, from the Gram system 2 A^T A lambda = |a_l|^2.
EnclosingBall circumball(const std::vector<Vec>& pts, const std::vector<std::size_t>& support) {
    EnclosingBall ball;
    ball.support = support;
    if (support.empty()) return ball;
    const Vec& p0 = pts[support[0]];
    if (support.size() == 1) {
        ball.center = p0;
        ball.radius2 = 0.0;
        return ball;
    }
    const auto m = static_cast<Eigen::Index>(support.size() - 1);
    Eigen::MatrixXd a(p0.size(), m);
    for (Eigen::Index l = 0; l < m; ++l) a.col(l) = pts[support[static_cast<std::size_t>(l) + 1]] - p0;
    const Eigen::MatrixXd gram = 2.0 * a.transpose() * a;
    const Vec rhs = a.colwise().squaredNorm().transpose();
    const Vec lambda = gram.colPivHouseholderQr().solve(rhs);
    ball.center = p0 + a * lambda;
    ball.radius2 = 0.0;
    for (std::size_t s : support) ball.radius2 = std::max(ball.radius2, (pts[s] - ball.center).squaredNorm());
    return ball;
}

bool encloses(const EnclosingBall& ball, const Vec& p) {
    if (ball.radius2 < 0.0) return false;
    return (p - ball.center).squaredNorm() <= ball.radius2 * (1.0 + 1e-12) + 1e-300;
}

// Move-to-front recursion: the ball of order[0, end) with `support` on the boundary.
EnclosingBall moveToFront(const std::vector<Vec>& pts, std::vector<std::size_t>& order, std::size_t end,
                          std::vector<std::size_t>& support, std::size_t dim) {
    EnclosingBall ball = circumball(pts, support);
    if (support.size() == dim + 1) return ball;
    for (std::size_t i = 0; i < end; ++i) {
        const std::size_t idx = order[i];
        if (encloses(ball, pts[idx])) continue;
        support.push_back(idx);
        ball = moveToFront(pts, order, i, support, dim);
        support.pop_back();
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i),
                    order.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return ball;
}

}  // namespace

OneCenter exactOneCenter(const PointSet& x, const NormSpec& norm, std::uint64_t seed) {
    if (!norm.isEuclidean()) throw UnsupportedError("exactOneCenter supports only the l2 norm, got " + norm.tag());
    if (x.size() == 0) throw InputError("input point set is empty");
    const std::size_t n = x.size();
    const std::size_t d = x.dim();
    std::vector<Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = Eigen::Map<const Vec>(x[i].data(), static_cast<Eigen::Index>(d));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed, Stream::Shuffle);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::size_t> support;
    const EnclosingBall ball = moveToFront(pts, order, n, support, d);
    OneCenter out;
    out.center.assign(ball.center.data(), ball.center.data() + d);
    for (std::size_t i = 0; i < n; ++i) out.radius = std::max(out.radius, norm.distance(x[i], out.center));
    out.support = ball.support;
    std::sort(out.support.begin(), out.support.end());
    return out;
}

SolveResult gridBruteOracle(const PointSet& x, const ObjectiveSpec& objective, double resolution,
                            const NormSpec& norm) {
    const auto start = std::chrono::steady_clock::now();
    if (x.size() == 0) throw InputError("input point set is empty");
    const std::size_t d = x.dim();
    const std::size_t k = objective.k;
    if (d > 2) throw UnsupportedError("gridBruteOracle needs d <= 2, got d=" + std::to_string(d));
    if (k > 2) throw UnsupportedError("gridBruteOracle needs k <= 2, got k=" + std::to_string(k));
    if (!(resolution > 0.0) || !std::isfinite(resolution)) throw ParameterError("resolution must be positive");
    const PointMatrix points = x.expanded();
    const std::size_t n = points.size();
    objective.validate(n);

    Point lo(points[0].begin(), points[0].end());
    Point hi = lo;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], points[j][a]);
            hi[a] = std::max(hi[a], points[j][a]);
        }
    }
    double extent = 0.0;
    for (std::size_t a = 0; a < d; ++a) extent = std::max(extent, hi[a] - lo[a]);
    const double step = resolution * extent;
    std::vector<std::size_t> axisNodes(d, 1);
    Point origin(d);
    Point halfCell(d, 0.0);
    Point boxSpan(d, 0.0);
    double nodes = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
        const double mid = 0.5 * (lo[a] + hi[a]);
        const double width = 1.5 * (hi[a] - lo[a]);
        boxSpan[a] = width;
        if (width > 0.0) {
            axisNodes[a] = static_cast<std::size_t>(std::floor(width / step + 1e-9)) + 1;
            halfCell[a] = 0.5 * step;
        }
        origin[a] = mid - 0.5 * static_cast<double>(axisNodes[a] - 1) * step;
        nodes *= static_cast<double>(axisNodes[a]);
    }
    if (nodes > kGridNodeBudget) {
        throw ResourceError("grid needs " + compact(nodes) + " nodes, budget is " +
                                compact(kGridNodeBudget),
                            nodes, kGridNodeBudget);
    }
    const auto nodeCount = static_cast<std::size_t>(nodes);
    const std::size_t slots = isSymmetric(objective.kind) ? 1 : k;
    if (k == 2) {
        const double work = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 60))) * nodes *
                            static_cast<double>(slots);
        if (n > 24 || work > kGridSubsetBudget) {
            throw ResourceError("grid subset search needs " + compact(work) + " steps, budget is " +
                                    compact(kGridSubsetBudget),
                                work, kGridSubsetBudget);
        }
    }
    auto nodePoint = [&](std::size_t g, std::span<double> out) {
        for (std::size_t a = 0; a < d; ++a) {
            out[a] = origin[a] + static_cast<double>(g % axisNodes[a]) * step;
            g /= axisNodes[a];
        }
    };

    SolveResult result;
    result.kind = objective.kind;
    result.tuples = nodes;
    result.centers = PointMatrix(d);
    Point c(d);
    std::vector<double> costs(slots * n);
    auto fillCosts = [&](std::size_t g) {
        nodePoint(g, c);
        for (std::size_t s = 0; s < slots; ++s) {
            for (std::size_t j = 0; j < n; ++j) costs[s * n + j] = objective.cost(s, j, norm.distance(points[j], c));
        }
    };
    const bool isMax = objective.kind == ObjectiveKind::KCenter;
    const std::size_t kept = objective.kind == ObjectiveKind::Problem2 ? objective.cardinalities[0]
                             : keepsM(objective.kind)                 ? objective.m
                                                                      : n;

    if (k == 1) {
        double bestValue = kInf;
        std::size_t bestNode = 0;
        std::vector<double> work(n);
        for (std::size_t g = 0; g < nodeCount; ++g) {
            fillCosts(g);
            double v = 0.0;
            if (isMax) {
                for (std::size_t j = 0; j < n; ++j) v = std::max(v, costs[j]);
            } else if (kept < n) {
                std::copy(costs.begin(), costs.end(), work.begin());
                v = sumSmallest(work, kept);
            } else {
                for (std::size_t j = 0; j < n; ++j) v += costs[j];
            }
            if (v < bestValue) {
                bestValue = v;
                bestNode = g;
            }
        }
        nodePoint(bestNode, c);
        result.centers.push_back(c);
        result.value = bestValue;
        fillCosts(bestNode);
        result.assignment.assign(n, 0);
        if (kept < n) {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
            for (std::size_t r = kept; r < n; ++r) result.assignment[order[r]] = kOutlier;
        }
    } else {
        // min over grid pairs = min over splits (S1, S2) of the per-part grid minima.
        const std::size_t subsets = std::size_t{1} << n;
        std::vector<double> partBest(slots * subsets, kInf);
        std::vector<std::size_t> partNode(slots * subsets, 0);
        std::vector<double> agg(subsets, 0.0);
        for (std::size_t g = 0; g < nodeCount; ++g) {
            fillCosts(g);
            for (std::size_t s = 0; s < slots; ++s) {
                const double* row = costs.data() + s * n;
                double* best = partBest.data() + s * subsets;
                std::size_t* bestNode = partNode.data() + s * subsets;
                for (std::size_t set = 1; set < subsets; ++set) {
                    const std::size_t low = static_cast<std::size_t>(std::countr_zero(set));
                    const double prev = agg[set & (set - 1)];
                    agg[set] = isMax ? std::max(prev, row[low]) : prev + row[low];
                    if (agg[set] < best[set]) {
                        best[set] = agg[set];
                        bestNode[set] = g;
                    }
                }
            }
        }
        for (std::size_t s = 0; s < slots; ++s) partBest[s * subsets] = 0.0;
        const std::size_t full = subsets - 1;
        const double* best1 = partBest.data();
        const double* best2 = partBest.data() + (slots - 1) * subsets;
        double bestValue = kInf;
        std::size_t bestS1 = 0, bestS2 = 0;
        auto offer = [&](std::size_t s1, std::size_t s2) {
            const double v = isMax ? std::max(best1[s1], best2[s2]) : best1[s1] + best2[s2];
            if (v < bestValue) {
                bestValue = v;
                bestS1 = s1;
                bestS2 = s2;
            }
        };
        for (std::size_t s1 = 0; s1 < subsets; ++s1) {
            const auto size1 = static_cast<std::size_t>(std::popcount(s1));
            if (kept == n && objective.kind != ObjectiveKind::Problem2) {
                offer(s1, full ^ s1);
                continue;
            }
            const std::size_t rest = full ^ s1;
            for (std::size_t s2 = rest;; s2 = (s2 - 1) & rest) {
                const auto size2 = static_cast<std::size_t>(std::popcount(s2));
                const bool fits = objective.kind == ObjectiveKind::Problem2
                                      ? size1 == objective.cardinalities[0] && size2 == objective.cardinalities[1]
                                      : size1 + size2 == kept;
                if (fits) offer(s1, s2);
                if (s2 == 0) break;
            }
        }
        result.value = bestValue;
        nodePoint(partNode[bestS1], c);
        result.centers.push_back(c);
        nodePoint(partNode[(slots - 1) * subsets + bestS2], c);
        result.centers.push_back(c);
        result.assignment.assign(n, kOutlier);
        for (std::size_t j = 0; j < n; ++j) {
            if (bestS1 >> j & 1U) result.assignment[j] = 0;
            if (bestS2 >> j & 1U) result.assignment[j] = 1;
        }
    }

    const double halfDiagonal = norm.norm(halfCell);
    if (isMax) {
        result.slack = halfDiagonal;
    } else {
        const double diameter = norm.norm(boxSpan);
        for (std::size_t j = 0; j < n; ++j) {
            double worst = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const double g = objective.exponent(i, j);
                double delta = 0.0;
                if (g >= 1.0) {
                    delta = power(diameter + halfDiagonal, g) - power(diameter, g);
                } else if (g > 0.0) {
                    delta = std::pow(halfDiagonal, g);
                }
                worst = std::max(worst, objective.unitCost(i, j) * delta);
            }
            result.slack += worst;
        }
    }
    result.wallMs = elapsedMs(start);
    return result;
}

}  // namespace ccoll
