#include "ccoll/collection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <unordered_set>

#include "ccoll/error.hpp"
#include "ccoll/kdtree.hpp"
#include "ccoll/kernels.hpp"
#include "ccoll/rng.hpp"
#include "ccoll/wspd.hpp"

namespace ccoll {

ScheduleParams computeParams(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ParameterError("epsilon must be a positive finite number");
    ScheduleParams params;
    params.epsilon = epsilon;
    if (epsilon >= 1.0) {
        params.inputOnly = true;
        return params;
    }
    // 1 / log_eps(0.9) = ln(eps) / ln(0.9)
    params.levels = static_cast<int>(std::ceil(std::log(epsilon) / std::log(0.9)));
    params.delta = std::pow(epsilon, 1.0 + 1.0 / params.levels);
    params.separation = std::max(10.0, (1.0 + epsilon) / epsilon);
    params.templateSigma = 0.3 * epsilon;
    if (!withinBound(0.9 * epsilon, params.delta)) {
        throw BuildError("schedule parameters violate delta >= 0.9 eps at eps = " + std::to_string(epsilon));
    }
    return params;
}

Lens::Lens(Point x1, Point x2, double epsilon, NormSpec norm)
    : x1_(std::move(x1)), x2_(std::move(x2)), epsilon_(epsilon), norm_(std::move(norm)) {
    if (!(epsilon > 0.0)) throw ParameterError("lens epsilon must be positive");
    const double d = ccoll::distance(x1_, x2_, norm_);
    if (d == 0.0) throw InputError("lens of coincident points is undefined");
    radius_ = d / (1.0 + epsilon_);
}

bool Lens::contains(PointView p) const {
    return norm_.distance(x1_, p) <= radius_ && norm_.distance(x2_, p) <= radius_;
}

Lens lensOf(PointView x1, PointView x2, double epsilon, const NormSpec& norm) {
    return Lens(Point(x1.begin(), x1.end()), Point(x2.begin(), x2.end()), epsilon, norm);
}

RadiusSchedule radiusSchedule(double baseDistance, const ScheduleParams& params) {
    if (params.inputOnly || params.levels <= 0) throw ParameterError("radius schedule requires eps < 1");
    if (!(baseDistance > 0.0)) throw InputError("radius schedule of coincident points is undefined");
    const double eps = params.epsilon;
    const int levels = params.levels;
    RadiusSchedule s;
    s.baseDistance = baseDistance;
    s.levels.resize(static_cast<std::size_t>(levels) + 1);
    for (int i = 0; i <= levels; ++i) {
        s.levels[static_cast<std::size_t>(i)] =
            baseDistance * std::pow(eps, 1.0 - static_cast<double>(i) / levels) / (1.0 + eps);
    }
    if (params.separation > 0.0) {
        const double t = params.separation;
        s.coverRadii.resize(static_cast<std::size_t>(levels));
        for (int i = 1; i <= levels; ++i) {
            s.coverRadii[static_cast<std::size_t>(i - 1)] =
                s.levels[static_cast<std::size_t>(i)] * (1.0 + 2.0 / t) + baseDistance / t;
        }
    }
    return s;
}

RadiusSchedule radiusSchedule(PointView x1, PointView x2, const ScheduleParams& params, const NormSpec& norm) {
    return radiusSchedule(ccoll::distance(x1, x2, norm), params);
}

std::string_view builderName(BuilderKind b) noexcept {
    switch (b) {
        case BuilderKind::Quadratic: return "quadratic";
        case BuilderKind::Linear: return "linear";
        case BuilderKind::InputOnly: return "input-only";
    }
    return "unknown";
}

std::optional<BuilderKind> parseBuilder(std::string_view name) noexcept {
    if (name == "quadratic") return BuilderKind::Quadratic;
    if (name == "linear") return BuilderKind::Linear;
    if (name == "input-only") return BuilderKind::InputOnly;
    return std::nullopt;
}

CentersCollection::CentersCollection(PointMatrix explicitPoints, CollectionInfo info)
    : explicit_(std::move(explicitPoints)), info_(std::move(info)) {
    if (explicit_.empty()) throw InputError("a centers collection needs at least one candidate");
}

CentersCollection::CentersCollection(PointMatrix explicitPoints, std::shared_ptr<const CoveringTemplate> tmpl,
                                     std::vector<CandidateBlock> blocks, CollectionInfo info)
    : explicit_(std::move(explicitPoints)), template_(std::move(tmpl)), blocks_(std::move(blocks)),
      info_(std::move(info)) {
    if (explicit_.empty()) throw InputError("a centers collection needs at least one candidate");
    if (!blocks_.empty() && !template_) throw InputError("candidate blocks need a covering template");
    if (template_ && template_->dim() != explicit_.dim()) throw InputError("template dimension mismatch");
    for (const CandidateBlock& b : blocks_) {
        if (b.anchor >= explicit_.size()) throw InputError("candidate block anchor out of range");
    }
}

std::size_t CentersCollection::size() const noexcept {
    return explicit_.size() + (template_ ? blocks_.size() * template_->size() : 0);
}

void CentersCollection::candidate(std::size_t i, std::span<double> out) const {
    if (i < explicit_.size()) {
        std::ranges::copy(explicit_[i], out.begin());
        return;
    }
    if (i >= size()) throw InputError("candidate index out of range");
    const std::size_t rel = i - explicit_.size();
    const CandidateBlock& b = blocks_[rel / template_->size()];
    placeCandidate(explicit_[b.anchor], b.scale, template_->centers()[rel % template_->size()], out);
}

Point CentersCollection::candidate(std::size_t i) const {
    Point p(dim());
    candidate(i, p);
    return p;
}

PointMatrix CentersCollection::materialize(int threads) const {
    PointMatrix out(dim());
    if (threads > 1) {
        kernels::materializeOmp(*this, out, threads);
    } else {
        kernels::materializeSerial(*this, out);
    }
    return out;
}

namespace {

double elapsedMs(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

CentersCollection inputOnly(const PointSet& x, double epsilon, const NormSpec& norm,
                            std::chrono::steady_clock::time_point start) {
    CollectionInfo info;
    info.epsilon = epsilon;
    info.norm = norm.tag();
    info.builder = BuilderKind::InputOnly;
    info.inputCount = x.size();
    CentersCollection c(x.points(), info);
    c.setBuildMs(elapsedMs(start));
    return c;
}

std::vector<CandidateBlock> emitBlocks(std::span<const kernels::PairItem> items, const ScheduleParams& params,
                                       BuilderKind builder, int threads) {
    const std::size_t perItem = kernels::blocksPerItem(params, builder);
    std::vector<CandidateBlock> blocks(items.size() * perItem);
    const std::size_t bad = threads > 1 ? kernels::emitBlocksOmp(items, params, builder, blocks, threads)
                                        : kernels::emitBlocksSerial(items, params, builder, blocks);
    if (bad != kernels::kNoViolation) {
        throw BuildError("covering radius condition 0.3 eps r_i <= delta d_i (1 - 2/t) failed for pair " +
                         std::to_string(bad / static_cast<std::size_t>(params.levels)) + ", level " +
                         std::to_string(bad % static_cast<std::size_t>(params.levels) + 1));
    }
    return blocks;
}

}  // namespace

CentersCollection buildQuadratic(const PointSet& x, double epsilon, const NormSpec& norm,
                                 const BuildOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const ScheduleParams params = computeParams(epsilon);
    const std::size_t n = x.size();
    if (params.inputOnly || n == 1) return inputOnly(x, epsilon, norm, start);

    auto tmpl = std::make_shared<const CoveringTemplate>(coveringFor(norm, x.dim(), params.delta));

    std::vector<kernels::PairItem> items;
    items.reserve(n * (n - 1));
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            if (a != b) items.push_back({a, b, norm.distance(x[a], x[b])});
        }
    }
    std::vector<CandidateBlock> blocks = emitBlocks(items, params, BuilderKind::Quadratic, options.threads);

    CollectionInfo info;
    info.epsilon = epsilon;
    info.norm = norm.tag();
    info.builder = BuilderKind::Quadratic;
    info.inputCount = n;
    info.pairCount = items.size();
    info.levels = params.levels;
    info.templateSize = tmpl->size();
    info.templateSigma = tmpl->sigma();
    CentersCollection c(x.points(), std::move(tmpl), std::move(blocks), info);
    c.setBuildMs(elapsedMs(start));
    return c;
}

CentersCollection buildLinear(const PointSet& x, double epsilon, const NormSpec& norm, const BuildOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const ScheduleParams params = computeParams(epsilon);
    const std::size_t n = x.size();
    if (params.inputOnly || n == 1) return inputOnly(x, epsilon, norm, start);

    const SplitTree tree = buildSplitTree(x);
    const WspdSet wspd = extractWspd(tree, params.separation, norm);
    auto tmpl = std::make_shared<const CoveringTemplate>(coveringFor(norm, x.dim(), params.templateSigma));

    std::vector<kernels::PairItem> items;
    items.reserve(wspd.size());
    for (const WellSeparatedPair& p : wspd.pairs) items.push_back({p.repA, p.repB, norm.distance(x[p.repA], x[p.repB])});
    std::vector<CandidateBlock> blocks = emitBlocks(items, params, BuilderKind::Linear, options.threads);

    CollectionInfo info;
    info.epsilon = epsilon;
    info.norm = norm.tag();
    info.builder = BuilderKind::Linear;
    info.inputCount = n;
    info.pairCount = wspd.size();
    info.levels = params.levels;
    info.templateSize = tmpl->size();
    info.templateSigma = tmpl->sigma();
    CentersCollection c(x.points(), std::move(tmpl), std::move(blocks), info);
    c.setBuildMs(elapsedMs(start));
    return c;
}

CentersCollection buildCollection(BuilderKind builder, const PointSet& x, double epsilon, const NormSpec& norm,
                                  const BuildOptions& options) {
    switch (builder) {
        case BuilderKind::Quadratic: return buildQuadratic(x, epsilon, norm, options);
        case BuilderKind::Linear: return buildLinear(x, epsilon, norm, options);
        case BuilderKind::InputOnly: {
            computeParams(epsilon);
            return inputOnly(x, epsilon, norm, std::chrono::steady_clock::now());
        }
    }
    throw ParameterError("unknown builder");
}

namespace {

struct KeyHash {
    const std::vector<double>* keys;
    std::size_t dim;
    std::size_t operator()(std::size_t i) const noexcept {
        std::uint64_t h = 0x9e37;
        for (std::size_t a = 0; a < dim; ++a) {
            std::uint64_t bits;
            std::memcpy(&bits, &(*keys)[i * dim + a], sizeof bits);
            h = splitmix64(h ^ bits);
        }
        return static_cast<std::size_t>(h);
    }
};

struct KeyEq {
    const std::vector<double>* keys;
    std::size_t dim;
    bool operator()(std::size_t a, std::size_t b) const noexcept {
        return std::equal(keys->begin() + static_cast<std::ptrdiff_t>(a * dim),
                          keys->begin() + static_cast<std::ptrdiff_t>((a + 1) * dim),
                          keys->begin() + static_cast<std::ptrdiff_t>(b * dim));
    }
};

}  // namespace

CentersCollection dedupCandidates(const CentersCollection& collection, double quantum) {
    if (!(quantum >= 0.0) || !std::isfinite(quantum)) throw ParameterError("dedup quantum must be >= 0");
    const PointMatrix all = collection.materialize();
    const std::size_t d = all.dim();
    std::vector<double> keys(all.coords());
    for (double& k : keys) {
        if (quantum > 0.0) k = std::round(k / quantum);
        if (k == 0.0) k = 0.0;
    }
    std::unordered_set<std::size_t, KeyHash, KeyEq> seen(all.size(), KeyHash{&keys, d}, KeyEq{&keys, d});
    PointMatrix kept(d);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (seen.insert(i).second) kept.push_back(all[i]);
    }
    CollectionInfo info = collection.info();
    return CentersCollection(std::move(kept), info);
}

PremiseReport checkCoveringPremise(const CentersCollection& collection, const NormSpec& norm,
                                   std::size_t samplesPerBall, std::uint64_t seed, int threads) {
    PremiseReport report;
    const CoveringTemplate* tmpl = collection.coveringTemplate();
    if (!tmpl || collection.blocks().empty()) return report;

    const KdTree index(tmpl->centers());
    const std::size_t d = collection.dim();
    const auto& blocks = collection.blocks();
    const auto nb = static_cast<std::int64_t>(blocks.size());
    std::size_t violations = 0;
    double worst = 0.0;

    norm.visit([&](const auto& metric) {
#pragma omp parallel num_threads(threads) if (threads > 1) reduction(+ : violations) reduction(max : worst)
        {
            Point unit(d), sample(d), center(d);
#pragma omp for schedule(static)
            for (std::int64_t b = 0; b < nb; ++b) {
                const CandidateBlock& blk = blocks[static_cast<std::size_t>(b)];
                const PointView anchor = collection.explicitPoints()[blk.anchor];
                Rng rng(seed, Stream::Premise, static_cast<std::uint64_t>(b));
                for (std::size_t s = 0; s < samplesPerBall; ++s) {
                    sampleUnitBall(norm, d, rng, unit);
                    placeCandidate(anchor, blk.scale, unit, sample);
                    const auto [nearest, unitDist] = index.nearest(tmpl->centers(), unit, metric);
                    placeCandidate(anchor, blk.scale, tmpl->centers()[nearest], center);
                    const double dist = metric.dist(sample.data(), center.data(), d);
                    const double ratio = dist / blk.coverRadius;
                    worst = std::max(worst, ratio);
                    if (!withinBound(dist, blk.coverRadius)) ++violations;
                }
            }
        }
    });

    report.balls = blocks.size();
    report.samples = blocks.size() * samplesPerBall;
    report.violations = violations;
    report.worstRatio = worst;
    return report;
}

}  // namespace ccoll
