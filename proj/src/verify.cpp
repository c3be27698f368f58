#include "ccoll/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <type_traits>

#include "ccoll/error.hpp"
#include "ccoll/kdtree.hpp"
#include "ccoll/rng.hpp"

namespace ccoll {

namespace {

constexpr std::size_t kNoWitness = static_cast<std::size_t>(-1);
constexpr double kDirectCells = 8;
constexpr double kLatticeCellBudget = 5e7;
constexpr double kLatticeTolerance = 1e-6;
constexpr std::size_t kMaxSplitDim = 8;
constexpr int kSeedIterations = 64;
constexpr int kPropagationRounds = 3;
constexpr double kReachMargin = 1e-7;
// The region box goes through different rounding than exact distances, and black-box
// norms are only validated up to 1e-9, so its radii are inflated slightly.
constexpr double kRegionInflate = 1.0 + 1e-8;

void checkDim(PointView p, const PointSet& x) {
    if (p.size() != x.dim()) {
        throw InputError("probe dimension " + std::to_string(p.size()) + " does not match input dimension " +
                         std::to_string(x.dim()));
    }
}

/// Largest |q_a - c_a| over q with |q - c| <= r whose other coordinates stay at least
/// gap[b] from c_b (gap[a] must be 0); negative when no such q exists. Rounded up.
template <class Metric>
double axisReach(const Metric& metric, double r, const double* gap, std::size_t d) {
    const double margin = kReachMargin * r;
    if constexpr (std::is_same_v<Metric, metrics::L1>) {
        double rest = r;
        for (std::size_t b = 0; b < d; ++b) rest -= gap[b];
        return rest < 0.0 ? rest : rest + margin;
    } else if constexpr (std::is_same_v<Metric, metrics::L2>) {
        double rest = r * r;
        for (std::size_t b = 0; b < d; ++b) rest -= gap[b] * gap[b];
        return rest < 0.0 ? -1.0 : std::sqrt(rest) + margin;
    } else if constexpr (std::is_same_v<Metric, metrics::LInf>) {
        for (std::size_t b = 0; b < d; ++b) {
            if (gap[b] > r) return -1.0;
        }
        return r + margin;
    } else if constexpr (std::is_same_v<Metric, metrics::Lp>) {
        double rest = 1.0;
        for (std::size_t b = 0; b < d; ++b) rest -= std::pow(gap[b] / r, metric.p);
        return rest < 0.0 ? -1.0 : r * std::pow(rest, 1.0 / metric.p) + margin;
    } else {
        const double reach = r / metric.cLow;
        for (std::size_t b = 0; b < d; ++b) {
            if (gap[b] > reach) return -1.0;
        }
        return reach + margin;
    }
}

}  // namespace

FactorResult bestFactorBrute(PointView p, const CentersCollection& collection, const PointSet& x,
                             const NormSpec& norm) {
    checkDim(p, x);
    if (collection.dim() != x.dim()) throw InputError("collection dimension does not match input dimension");
    FactorResult best{std::numeric_limits<double>::infinity(), kNoWitness};
    Point q(x.dim());
    for (std::size_t i = 0; i < collection.size(); ++i) {
        collection.candidate(i, q);
        const double f = approximationFactor(p, q, x, norm);
        if (best.witness == kNoWitness || f < best.factor) best = {f, i};
    }
    return best;
}

CandidateIndex::CandidateIndex(const CentersCollection& collection, const PointSet& x, NormSpec norm)
    : collection_(&collection), x_(&x), norm_(std::move(norm)) {
    if (collection.dim() != x.dim()) throw InputError("collection dimension does not match input dimension");
    const CoveringTemplate* tmpl = collection.coveringTemplate();
    if (!tmpl || collection.blocks().empty()) return;
    buildLattice(*tmpl);
    // Finest blocks first: their lattice points sit closest to the probe.
    const auto& blocks = collection.blocks();
    seedOrder_.resize(blocks.size());
    std::iota(seedOrder_.begin(), seedOrder_.end(), 0U);
    std::ranges::stable_sort(seedOrder_, [&](std::uint32_t a, std::uint32_t b) { return blocks[a].scale < blocks[b].scale; });
}

void CandidateIndex::buildLattice(const CoveringTemplate& tmpl) {
    const std::size_t d = tmpl.dim();
    const PointMatrix& centers = tmpl.centers();
    const double h = tmpl.spacing();
    if (!(h > 0.0) || d > kMaxSplitDim) return;
    Point origin(d);
    for (std::size_t a = 0; a < d; ++a) origin[a] = centers[0][a] - h * std::round(centers[0][a] / h);

    std::vector<long> coords(centers.size() * d);
    std::vector<long> klo(d, std::numeric_limits<long>::max()), khi(d, std::numeric_limits<long>::min());
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t a = 0; a < d; ++a) {
            const long k = std::lround((centers[c][a] - origin[a]) / h);
            if (std::abs(origin[a] + h * static_cast<double>(k) - centers[c][a]) > 1e-9 * h) return;
            coords[c * d + a] = k;
            klo[a] = std::min(klo[a], k);
            khi[a] = std::max(khi[a], k);
        }
    }
    double cells = 1.0;
    for (std::size_t a = 0; a < d; ++a) cells *= static_cast<double>(khi[a] - klo[a] + 1);
    if (cells > kLatticeCellBudget) return;

    std::vector<std::int32_t> cell(static_cast<std::size_t>(cells), -1);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < d; ++a) {
            flat = flat * static_cast<std::size_t>(khi[a] - klo[a] + 1) +
                   static_cast<std::size_t>(coords[c * d + a] - klo[a]);
        }
        if (cell[flat] >= 0) return;
        cell[flat] = static_cast<std::int32_t>(c);
    }
    spacing_ = h;
    latticeOrigin_ = std::move(origin);
    kLow_ = std::move(klo);
    kHigh_ = std::move(khi);
    latticeCell_ = std::move(cell);
}

FactorResult CandidateIndex::bestFactor(PointView p) const {
    checkDim(p, *x_);
    return norm_.visit([&](const auto& metric) { return search(p, metric, -std::numeric_limits<double>::infinity()); });
}

FactorResult CandidateIndex::witness(PointView p, double threshold) const {
    checkDim(p, *x_);
    return norm_.visit([&](const auto& metric) { return search(p, metric, threshold); });
}

template <class Metric>
FactorResult CandidateIndex::search(PointView p, const Metric& metric, double stopAt) const {
    const PointSet& x = *x_;
    const std::size_t n = x.size();
    const std::size_t d = x.dim();

    // Inputs nearest to p first: they carry the largest ratios, so early exits come sooner.
    // The input that ended the last early exit is tried before all others.
    std::vector<double> dp(n);
    std::vector<std::uint32_t> near(n);
    for (std::size_t j = 0; j < n; ++j) dp[j] = metric.dist(x[j].data(), p.data(), d);
    std::iota(near.begin(), near.end(), 0U);
    std::ranges::sort(near, [&](std::uint32_t a, std::uint32_t b) { return dp[a] < dp[b] || (dp[a] == dp[b] && a < b); });
    std::uint32_t killer = near[0];

    // Exact factor of q, or some value above `bound` once that is certain.
    auto factorOf = [&](const double* q, double bound) {
        double worst = distanceRatio(metric.dist(x[killer].data(), q, d), dp[killer]);
        if (worst > bound) return worst;
        for (std::uint32_t j : near) {
            if (j == killer) continue;
            worst = std::max(worst, distanceRatio(metric.dist(x[j].data(), q, d), dp[j]));
            if (worst > bound) {
                killer = j;
                break;
            }
        }
        return worst;
    };

    const CentersCollection& coll = *collection_;
    FactorResult best{std::numeric_limits<double>::infinity(), kNoWitness};
    const double cLow = norm_.lowerConstant(d);
    Point qlo(d), qhi(d);
    // Box holding every candidate whose factor can still be <= best.
    std::vector<double> reachGap(d);
    auto refreshRegion = [&] {
        std::ranges::fill(qlo, -std::numeric_limits<double>::infinity());
        std::ranges::fill(qhi, std::numeric_limits<double>::infinity());
        if (std::isinf(best.factor)) return;
        for (std::size_t j = 0; j < n; ++j) {
            const double r = best.factor * dp[j] / cLow * kRegionInflate;
            for (std::size_t a = 0; a < d; ++a) {
                qlo[a] = std::max(qlo[a], x[j][a] - r);
                qhi[a] = std::min(qhi[a], x[j][a] + r);
            }
        }
        // Shrink the box: with the other coordinates confined to the box, each ball bounds
        // how far coordinate a can stray from the ball's center.
        for (int round = 0; round < kPropagationRounds; ++round) {
            for (std::uint32_t j : near) {
                const double r = best.factor * dp[j] * kRegionInflate;
                const double* c = x[j].data();
                for (std::size_t a = 0; a < d; ++a) {
                    for (std::size_t b = 0; b < d; ++b) {
                        reachGap[b] = b == a ? 0.0 : std::max({qlo[b] - c[b], c[b] - qhi[b], 0.0});
                    }
                    const double reach = axisReach(metric, r, reachGap.data(), d);
                    if (reach < 0.0) {
                        std::ranges::fill(qlo, std::numeric_limits<double>::infinity());
                        std::ranges::fill(qhi, -std::numeric_limits<double>::infinity());
                        return;
                    }
                    qlo[a] = std::max(qlo[a], c[a] - reach);
                    qhi[a] = std::min(qhi[a], c[a] + reach);
                }
            }
        }
    };
    bool done = false;
    auto offer = [&](std::size_t idx, double f) {
        if (best.witness == kNoWitness || f < best.factor || (f == best.factor && idx < best.witness)) {
            const bool improved = f < best.factor;
            best = {f, idx};
            done = best.factor <= stopAt;
            if (improved && !done) refreshRegion();
        }
    };
    auto inRegion = [&](const double* q) {
        for (std::size_t a = 0; a < d; ++a) {
            if (q[a] < qlo[a] || q[a] > qhi[a]) return false;
        }
        return true;
    };

    refreshRegion();
    const PointMatrix& explicitPts = coll.explicitPoints();
    for (std::size_t i = 0; i < explicitPts.size() && !done; ++i) offer(i, factorOf(explicitPts[i].data(), best.factor));
    const auto& blocks = coll.blocks();
    if (done || blocks.empty()) return best;

    const PointMatrix& centers = coll.coveringTemplate()->centers();
    const std::size_t tsize = centers.size();
    const std::size_t base = explicitPts.size();
    Point q(d);
    auto tryCenter = [&](std::size_t block, std::size_t c) {
        const CandidateBlock& blk = blocks[block];
        placeCandidate(explicitPts[blk.anchor], blk.scale, centers[c], q);
        if (!inRegion(q.data())) return;
        offer(base + block * tsize + c, factorOf(q.data(), best.factor));
    };

    if (latticeCell_.empty()) {
        for (std::size_t b = 0; b < blocks.size() && !done; ++b) {
            for (std::size_t c = 0; c < tsize && !done; ++c) tryCenter(b, c);
        }
        return best;
    }

    auto cellOf = [&](const long* kk) {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < d; ++a) {
            flat = flat * static_cast<std::size_t>(kHigh_[a] - kLow_[a] + 1) + static_cast<std::size_t>(kk[a] - kLow_[a]);
        }
        return latticeCell_[flat];
    };

    // Seed targets: p itself (best for probes surrounded by inputs) and an approximate
    // minimizer of max_x dist(x,q)/dist(x,p), reached by stepping toward the input with
    // the worst ratio (best for probes outside the inputs' hull).
    Point target(p.begin(), p.end());
    {
        Point y(p.begin(), p.end());
        double targetValue = std::numeric_limits<double>::infinity();
        for (int it = 0; it < kSeedIterations; ++it) {
            std::uint32_t worst = near[0];
            double worstRatio = -1.0;
            for (std::uint32_t j : near) {
                const double r = distanceRatio(metric.dist(x[j].data(), y.data(), d), dp[j]);
                if (r > worstRatio) {
                    worstRatio = r;
                    worst = j;
                }
            }
            if (worstRatio < targetValue) {
                targetValue = worstRatio;
                target = y;
            }
            const double step = 1.0 / (it + 2.0);
            for (std::size_t a = 0; a < d; ++a) y[a] += (x[worst][a] - y[a]) * step;
        }
    }
    std::vector<long> k(d);
    auto seedNear = [&](std::size_t b, PointView y) {
        const CandidateBlock& blk = blocks[b];
        const PointView a = explicitPts[blk.anchor];
        for (std::size_t ax = 0; ax < d; ++ax) {
            const double r = std::round(((y[ax] - a[ax]) / blk.scale - latticeOrigin_[ax]) / spacing_);
            if (r < static_cast<double>(kLow_[ax]) || r > static_cast<double>(kHigh_[ax])) return;
            k[ax] = static_cast<long>(r);
        }
        const std::int32_t c = cellOf(k.data());
        if (c >= 0) tryCenter(b, static_cast<std::size_t>(c));
    };
    const bool distinctTarget = !std::ranges::equal(target, p);
    for (std::size_t i = 0; i < seedOrder_.size() && !done; ++i) {
        seedNear(seedOrder_[i], p);
        if (distinctTarget && !done) seedNear(seedOrder_[i], target);
    }
    if (done) return best;

    // True when no input rules out every point of [lo, hi].
    std::vector<double> gap(d);
    auto boxFeasible = [&](const double* lo, const double* hi) {
        auto fails = [&](std::uint32_t j) {
            const double g = boxGapLowerBound(x[j].data(), lo, hi, d, metric, gap.data());
            return g > best.factor * dp[j] * kRegionInflate;
        };
        if (fails(killer)) return false;
        for (std::uint32_t j : near) {
            if (j != killer && fails(j)) {
                killer = j;
                return false;
            }
        }
        return true;
    };

    // Lattice ranges [klo, khi] per block; big ranges are split and pruned by boxFeasible.
    struct Range {
        long lo[kMaxSplitDim];
        long hi[kMaxSplitDim];
    };
    std::vector<Range> pending;
    std::vector<double> blo(d), bhi(d);
    auto enumerate = [&](std::size_t b, const Range& r) {
        long kk[kMaxSplitDim];
        for (std::size_t ax = 0; ax < d; ++ax) kk[ax] = r.lo[ax];
        while (true) {
            const std::int32_t c = cellOf(kk);
            if (c >= 0) {
                tryCenter(b, static_cast<std::size_t>(c));
                if (done) return;
            }
            std::size_t ax = d;
            while (ax > 0) {
                --ax;
                if (kk[ax] < r.hi[ax]) {
                    ++kk[ax];
                    break;
                }
                kk[ax] = r.lo[ax];
                if (ax == 0) return;
            }
        }
    };

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const CandidateBlock& blk = blocks[b];
        const PointView a = explicitPts[blk.anchor];
        Range root;
        bool empty = false;
        for (std::size_t ax = 0; ax < d && !empty; ++ax) {
            const double ulo = ((qlo[ax] - a[ax]) / blk.scale - latticeOrigin_[ax]) / spacing_;
            const double uhi = ((qhi[ax] - a[ax]) / blk.scale - latticeOrigin_[ax]) / spacing_;
            // The tolerance absorbs rounding in placeCandidate; inRegion decides exactly.
            root.lo[ax] = ulo < static_cast<double>(kLow_[ax])
                              ? kLow_[ax]
                              : std::max(kLow_[ax], static_cast<long>(std::ceil(ulo - kLatticeTolerance)));
            root.hi[ax] = uhi > static_cast<double>(kHigh_[ax])
                              ? kHigh_[ax]
                              : std::min(kHigh_[ax], static_cast<long>(std::floor(uhi + kLatticeTolerance)));
            empty = root.lo[ax] > root.hi[ax];
        }
        if (empty) continue;

        pending.assign(1, root);
        while (!pending.empty()) {
            const Range r = pending.back();
            pending.pop_back();
            double cells = 1.0;
            std::size_t wide = 0;
            for (std::size_t ax = 0; ax < d; ++ax) {
                cells *= static_cast<double>(r.hi[ax] - r.lo[ax] + 1);
                if (r.hi[ax] - r.lo[ax] > r.hi[wide] - r.lo[wide]) wide = ax;
            }
            if (cells <= kDirectCells) {
                enumerate(b, r);
                if (done) return best;
                continue;
            }
            const double margin = kLatticeTolerance * spacing_;
            for (std::size_t ax = 0; ax < d; ++ax) {
                blo[ax] = a[ax] + blk.scale * (latticeOrigin_[ax] + spacing_ * static_cast<double>(r.lo[ax]) - margin);
                bhi[ax] = a[ax] + blk.scale * (latticeOrigin_[ax] + spacing_ * static_cast<double>(r.hi[ax]) + margin);
            }
            if (!boxFeasible(blo.data(), bhi.data())) continue;
            const long mid = r.lo[wide] + (r.hi[wide] - r.lo[wide]) / 2;
            Range left = r, right = r;
            left.hi[wide] = mid;
            right.lo[wide] = mid + 1;
            pending.push_back(right);
            pending.push_back(left);
        }
    }
    return best;
}

FactorResult bestFactor(PointView p, const CentersCollection& collection, const PointSet& x, const NormSpec& norm) {
    return CandidateIndex(collection, x, norm).bestFactor(p);
}

PointMatrix lensStress(const PointSet& x, double epsilon, const NormSpec& norm, std::size_t count,
                       std::uint64_t seed) {
    if (x.size() < 2) throw InputError("lens probes need at least two distinct input points");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    const std::size_t d = x.dim();
    const double cLow = norm.lowerConstant(d);
    const std::size_t n = x.size();
    const std::size_t maxDraws = 4 * count + 100;

    Rng rng(seed, Stream::Lens);
    PointMatrix out(d);
    Point lo(d), hi(d), p(d);
    for (std::size_t draw = 0; out.size() < count && draw < maxDraws; ++draw) {
        const auto i = static_cast<std::size_t>(rng.below(n));
        auto j = static_cast<std::size_t>(rng.below(n - 1));
        if (j >= i) ++j;
        const Lens lens = lensOf(x[i], x[j], epsilon, norm);
        const double reach = lens.radius() / cLow;
        bool empty = false;
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::max(x[i][a], x[j][a]) - reach;
            hi[a] = std::min(x[i][a], x[j][a]) + reach;
            empty = empty || lo[a] > hi[a];
        }
        if (empty) continue;
        for (int attempt = 0; attempt < 100; ++attempt) {
            for (std::size_t a = 0; a < d; ++a) p[a] = rng.uniform(lo[a], hi[a]);
            if (lens.contains(p)) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

ProbeSet generateProbes(const PointSet& x, double epsilon, const NormSpec& norm, std::size_t numProbes,
                        std::uint64_t seed, const ProbeMix& mix) {
    if (numProbes == 0) throw InputError("probe count must be at least 1");
    if (mix.uniform < 0 || mix.gaussian < 0 || mix.lens < 0 || mix.far < 0) {
        throw ParameterError("probe mix weights must be nonnegative");
    }
    const double total = mix.uniform + mix.gaussian + mix.lens + mix.far;
    if (!(total > 0.0)) throw ParameterError("probe mix weights must not all be zero");
    const auto share = [&](double w) { return static_cast<std::size_t>(std::floor(numProbes * w / total)); };
    std::size_t nUniform = share(mix.uniform);
    const std::size_t nGaussian = share(mix.gaussian);
    std::size_t nLens = share(mix.lens);
    const std::size_t nFar = numProbes - nUniform - nGaussian - nLens;

    PointMatrix lens(x.dim());
    if (x.size() >= 2 && nLens > 0) lens = lensStress(x, epsilon, norm, nLens, seed);
    nUniform += nLens - lens.size();
    nLens = lens.size();

    const std::size_t d = x.dim();
    Point lo(x[0].begin(), x[0].end()), hi = lo;
    for (std::size_t i = 1; i < x.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], x[i][a]);
            hi[a] = std::max(hi[a], x[i][a]);
        }
    }
    Point extent(d), center(d);
    for (std::size_t a = 0; a < d; ++a) {
        extent[a] = hi[a] - lo[a];
        center[a] = 0.5 * (lo[a] + hi[a]);
    }
    double diam = norm.norm(extent);
    if (diam == 0.0) diam = 1.0;

    ProbeSet set{PointMatrix(d), {}};
    set.points.reserve(numProbes);
    set.sources.reserve(numProbes);
    Point p(d);

    // Uniform over the bounding box doubled about its center; flat axes get width diam.
    Rng uni(seed, Stream::Uniform);
    for (std::size_t k = 0; k < nUniform; ++k) {
        for (std::size_t a = 0; a < d; ++a) {
            const double half = extent[a] > 0.0 ? extent[a] : 0.5 * diam;
            p[a] = uni.uniform(center[a] - half, center[a] + half);
        }
        set.points.push_back(p);
        set.sources.push_back(ProbeSource::Uniform);
    }

    constexpr double kScales[] = {0.01, 0.1, 1.0};
    Rng gauss(seed, Stream::Gaussian);
    for (std::size_t k = 0; k < nGaussian; ++k) {
        const PointView base = x[static_cast<std::size_t>(gauss.below(x.size()))];
        const double scale = kScales[gauss.below(3)] * diam;
        for (std::size_t a = 0; a < d; ++a) p[a] = base[a] + scale * gauss.normal();
        set.points.push_back(p);
        set.sources.push_back(ProbeSource::Gaussian);
    }

    for (std::size_t k = 0; k < nLens; ++k) {
        set.points.push_back(lens[k]);
        set.sources.push_back(ProbeSource::Lens);
    }

    Rng far(seed, Stream::Far);
    for (std::size_t k = 0; k < nFar; ++k) {
        double len = 0.0;
        while (len == 0.0) {
            for (std::size_t a = 0; a < d; ++a) p[a] = far.normal();
            len = norm.norm(p);
        }
        for (std::size_t a = 0; a < d; ++a) p[a] = center[a] + p[a] / len * 1000.0 * diam;
        set.points.push_back(p);
        set.sources.push_back(ProbeSource::Far);
    }
    return set;
}

ProbeReport reduceProbes(const ProbeSet& probes, std::span<const FactorResult> results,
                         const CentersCollection& collection, double epsilon) {
    if (results.size() != probes.points.size() || results.empty()) {
        throw InputError("probe results do not match the probe set");
    }
    ProbeReport r;
    r.epsilon = epsilon;
    r.probes = results.size();
    r.maxFactor = results[0].factor;
    for (std::size_t k = 0; k < results.size(); ++k) {
        ++r.sourceCounts[static_cast<std::size_t>(probes.sources[k])];
        const double f = results[k].factor;
        if (f > r.maxFactor) {
            r.maxFactor = f;
            r.argmaxProbe = k;
        }
        if (f < 1.0) {
            ++r.belowOne;
        } else if (!withinBound(f, 1.0 + epsilon)) {
            ++r.overflow;
        } else {
            const auto bin = static_cast<std::size_t>(std::floor((f - 1.0) / epsilon * kHistogramBins));
            ++r.histogram[std::min(bin, kHistogramBins - 1)];
        }
    }
    const PointView arg = probes.points[r.argmaxProbe];
    r.argmaxPoint.assign(arg.begin(), arg.end());
    r.witness = results[r.argmaxProbe].witness;
    r.witnessPoint = collection.candidate(r.witness);
    r.pass = withinBound(r.maxFactor, 1.0 + epsilon);
    return r;
}

ProbeReport probeVerify(const PointSet& x, const CentersCollection& collection, double epsilon,
                        const NormSpec& norm, std::size_t numProbes, std::uint64_t seed, const ProbeOptions& options) {
    if (numProbes == 0) throw InputError("probe count must be at least 1");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (options.threads < 1) throw ParameterError("thread count must be at least 1");
    const ProbeSet probes = generateProbes(x, epsilon, norm, numProbes, seed, options.mix);
    const CandidateIndex index(collection, x, norm);
    const double threshold =
        options.exact ? -std::numeric_limits<double>::infinity() : (1.0 + epsilon) * (1.0 + kRelativeSlack);
    std::vector<FactorResult> results(probes.points.size());
    if (options.threads > 1) {
        kernels::evaluateProbesOmp(index, probes.points, threshold, results, options.threads);
    } else {
        kernels::evaluateProbesSerial(index, probes.points, threshold, results);
    }
    ProbeReport report = reduceProbes(probes, results, collection, epsilon);
    report.exact = options.exact;
    return report;
}

namespace kernels {

void evaluateProbesSerial(const CandidateIndex& index, const PointMatrix& probes, double threshold,
                          std::span<FactorResult> out) {
    for (std::size_t k = 0; k < probes.size(); ++k) out[k] = index.witness(probes[k], threshold);
}

void evaluateProbesOmp(const CandidateIndex& index, const PointMatrix& probes, double threshold,
                       std::span<FactorResult> out, int threads) {
    const auto count = static_cast<std::int64_t>(probes.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = index.witness(probes[static_cast<std::size_t>(k)], threshold);
    }
}

}  // namespace kernels

}  // namespace ccoll
