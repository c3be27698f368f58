#include <algorithm>
#include <cmath>

#include "ccoll/error.hpp"
#include "ccoll/kernels.hpp"

namespace ccoll::kernels {

std::size_t blocksPerItem(const ScheduleParams& params, BuilderKind builder) {
    const auto levels = static_cast<std::size_t>(params.levels);
    switch (builder) {
        case BuilderKind::Quadratic: return levels;
        case BuilderKind::Linear: return 2 * levels;
        case BuilderKind::InputOnly: return 0;
    }
    return 0;
}

namespace {

// Emits the blocks of one work item; returns false if some level violates the
// linear covering-radius condition (the first such level goes to *badLevel).
bool emitItem(const PairItem& item, const ScheduleParams& params, BuilderKind builder, CandidateBlock* out,
              int* badLevel) {
    const double eps = params.epsilon;
    const int levels = params.levels;
    bool ok = true;
    for (int i = 1; i <= levels; ++i) {
        const double di = item.dist * std::pow(eps, 1.0 - static_cast<double>(i) / levels) / (1.0 + eps);
        if (builder == BuilderKind::Quadratic) {
            out[i - 1] = {item.a, di, params.delta * di};
            continue;
        }
        const double t = params.separation;
        const double ri = di * (1.0 + 2.0 / t) + item.dist / t;
        const double required = params.delta * di * (1.0 - 2.0 / t);
        if (ok && !withinBound(params.templateSigma * ri, required)) {
            ok = false;
            *badLevel = i;
        }
        out[2 * (i - 1)] = {item.a, ri, required};
        out[2 * (i - 1) + 1] = {item.b, ri, required};
    }
    return ok;
}

void checkShape(std::span<const PairItem> items, const ScheduleParams& params, BuilderKind builder,
                std::span<CandidateBlock> out) {
    if (builder == BuilderKind::InputOnly || params.levels <= 0) {
        throw ParameterError("block emission needs eps < 1 and a template builder");
    }
    if (out.size() != items.size() * blocksPerItem(params, builder)) {
        throw InputError("block output buffer has the wrong size");
    }
}

}  // namespace

std::size_t emitBlocksSerial(std::span<const PairItem> items, const ScheduleParams& params, BuilderKind builder,
                             std::span<CandidateBlock> out) {
    checkShape(items, params, builder, out);
    const std::size_t per = blocksPerItem(params, builder);
    const auto levels = static_cast<std::size_t>(params.levels);
    std::size_t first = kNoViolation;
    for (std::size_t k = 0; k < items.size(); ++k) {
        int bad = 0;
        if (!emitItem(items[k], params, builder, out.data() + k * per, &bad) && first == kNoViolation) {
            first = k * levels + static_cast<std::size_t>(bad - 1);
        }
    }
    return first;
}

std::size_t emitBlocksOmp(std::span<const PairItem> items, const ScheduleParams& params, BuilderKind builder,
                          std::span<CandidateBlock> out, int threads) {
    checkShape(items, params, builder, out);
    const std::size_t per = blocksPerItem(params, builder);
    const auto levels = static_cast<std::size_t>(params.levels);
    const auto count = static_cast<std::int64_t>(items.size());
    std::size_t first = kNoViolation;
#pragma omp parallel for num_threads(threads) schedule(static) reduction(min : first)
    for (std::int64_t k = 0; k < count; ++k) {
        int bad = 0;
        const auto uk = static_cast<std::size_t>(k);
        if (!emitItem(items[uk], params, builder, out.data() + uk * per, &bad)) {
            first = std::min(first, uk * levels + static_cast<std::size_t>(bad - 1));
        }
    }
    return first;
}

namespace {

void expandBlock(const CentersCollection& c, std::size_t b, PointMatrix& out) {
    const CandidateBlock& blk = c.blocks()[b];
    const PointMatrix& centers = c.coveringTemplate()->centers();
    const PointView anchor = c.explicitPoints()[blk.anchor];
    const std::size_t base = c.explicitCount() + b * centers.size();
    for (std::size_t j = 0; j < centers.size(); ++j) placeCandidate(anchor, blk.scale, centers[j], out.row(base + j));
}

void prepare(const CentersCollection& c, PointMatrix& out) {
    out = PointMatrix(c.dim());
    out.resize(c.size());
    const PointMatrix& x = c.explicitPoints();
    for (std::size_t i = 0; i < x.size(); ++i) std::ranges::copy(x[i], out.row(i).begin());
}

}  // namespace

void materializeSerial(const CentersCollection& c, PointMatrix& out) {
    prepare(c, out);
    if (!c.coveringTemplate()) return;
    for (std::size_t b = 0; b < c.blocks().size(); ++b) expandBlock(c, b, out);
}

void materializeOmp(const CentersCollection& c, PointMatrix& out, int threads) {
    prepare(c, out);
    if (!c.coveringTemplate()) return;
    const auto nb = static_cast<std::int64_t>(c.blocks().size());
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) expandBlock(c, static_cast<std::size_t>(b), out);
}

}  // namespace ccoll::kernels
