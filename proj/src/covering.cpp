#include "ccoll/covering.hpp"

#include <cmath>
#include <functional>

#include "ccoll/error.hpp"
#include "ccoll/rng.hpp"

namespace ccoll {

namespace {

constexpr double kLatticeBudget = 5e7;

void checkArgs(std::size_t d, double sigma) {
    if (d == 0) throw ParameterError("covering dimension must be positive");
    if (!(sigma > 0.0 && sigma < 1.0)) throw ParameterError("covering radius sigma must lie in (0,1)");
}

/// Walks h * [-k, k]^d in lexicographic order and keeps the points accepted by `keep`.
PointMatrix enumerateLattice(std::size_t d, double h, long k, const std::function<bool(PointView)>& keep) {
    const double side = 2.0 * static_cast<double>(k) + 1.0;
    if (std::pow(side, static_cast<double>(d)) > kLatticeBudget) {
        throw ResourceError("covering lattice too large", std::pow(side, static_cast<double>(d)), kLatticeBudget);
    }
    PointMatrix out(d);
    std::vector<long> z(d, -k);
    Point p(d);
    while (true) {
        for (std::size_t i = 0; i < d; ++i) p[i] = h * static_cast<double>(z[i]);
        if (keep(p)) out.push_back(p);
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (z[axis] < k) {
                ++z[axis];
                break;
            }
            z[axis] = -k;
            if (axis == 0) return out;
        }
    }
}

// Boundary lattice points of norm exactly 1 + sigma can be the only cover of a
// boundary point, so the filter is inclusive with a rounding margin.
constexpr double kFilterMargin = 1e-12;

}  // namespace

std::string_view constructionName(CoveringConstruction c) noexcept {
    switch (c) {
        case CoveringConstruction::EuclideanGrid: return "euclidean-grid";
        case CoveringConstruction::LinfGrid: return "linf-grid";
        case CoveringConstruction::LpGrid: return "lp-grid";
        case CoveringConstruction::BlackBoxGrid: return "blackbox-grid";
    }
    return "unknown";
}

CoveringTemplate::CoveringTemplate(PointMatrix centers, double sigma, NormSpec norm,
                                   CoveringConstruction construction, double spacing)
    : centers_(std::move(centers)), sigma_(sigma), norm_(std::move(norm)), construction_(construction),
      spacing_(spacing) {}

CoveringTemplate lpGrid(std::size_t d, double p, double sigma) {
    checkArgs(d, sigma);
    if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("lpGrid requires 1 <= p < inf");
    const NormSpec norm = NormSpec::lp(p);
    const double h = 2.0 * sigma / std::pow(static_cast<double>(d), 1.0 / p);
    const double bound = (1.0 + sigma) * (1.0 + kFilterMargin);
    const long k = static_cast<long>(std::ceil((1.0 + sigma) / h));
    PointMatrix centers = enumerateLattice(d, h, k, [&](PointView c) { return norm.norm(c) <= bound; });
    return CoveringTemplate(std::move(centers), sigma, norm,
                            p == 2.0 ? CoveringConstruction::EuclideanGrid : CoveringConstruction::LpGrid, h);
}

CoveringTemplate euclideanGrid(std::size_t d, double sigma) { return lpGrid(d, 2.0, sigma); }

CoveringTemplate linfGrid(std::size_t d, double sigma) {
    checkArgs(d, sigma);
    const auto m = static_cast<long>(std::ceil(1.0 / sigma));
    const double side = static_cast<double>(m);
    if (std::pow(side, static_cast<double>(d)) > kLatticeBudget) {
        throw ResourceError("covering lattice too large", std::pow(side, static_cast<double>(d)), kLatticeBudget);
    }
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (long j = 0; j < m; ++j) axis[static_cast<std::size_t>(j)] = -1.0 + (2.0 * static_cast<double>(j) + 1.0) / side;

    PointMatrix centers(d);
    std::vector<std::size_t> idx(d, 0);
    Point p(d);
    while (true) {
        for (std::size_t i = 0; i < d; ++i) p[i] = axis[idx[i]];
        centers.push_back(p);
        std::size_t a = d;
        bool done = true;
        while (a > 0) {
            --a;
            if (idx[a] + 1 < axis.size()) {
                ++idx[a];
                done = false;
                break;
            }
            idx[a] = 0;
        }
        if (done) break;
    }
    return CoveringTemplate(std::move(centers), sigma, NormSpec::linf(), CoveringConstruction::LinfGrid,
                            2.0 / side);
}

CoveringTemplate blackBoxGrid(std::size_t d, const NormSpec& norm, double sigma) {
    checkArgs(d, sigma);
    const double cLow = norm.lowerConstant(d);
    const double cHigh = norm.upperConstant(d);
    const double h = 2.0 * sigma / (static_cast<double>(d) * cHigh);
    const double boxBound = (1.0 + sigma) / cLow;
    const double bound = (1.0 + sigma) * (1.0 + kFilterMargin);
    const long k = static_cast<long>(std::ceil(boxBound / h));
    PointMatrix centers = enumerateLattice(d, h, k, [&](PointView c) {
        return metrics::LInf{}.norm(c.data(), d) <= boxBound * (1.0 + kFilterMargin) && norm.norm(c) <= bound;
    });
    return CoveringTemplate(std::move(centers), sigma, norm, CoveringConstruction::BlackBoxGrid, h);
}

CoveringTemplate coveringFor(const NormSpec& norm, std::size_t d, double sigma) {
    if (norm.kind() == NormKind::BlackBox) return blackBoxGrid(d, norm, sigma);
    if (norm.isChebyshev()) return linfGrid(d, sigma);
    return lpGrid(d, norm.exponent(), sigma);
}

PointMatrix scaleTranslate(const CoveringTemplate& tmpl, PointView center, double radius) {
    if (!(radius > 0.0)) throw ParameterError("scaleTranslate radius must be positive");
    if (center.size() != tmpl.dim()) throw InputError("scaleTranslate center has the wrong dimension");
    const std::size_t d = tmpl.dim();
    PointMatrix out(d);
    out.resize(tmpl.size());
    for (std::size_t c = 0; c < tmpl.size(); ++c) {
        const PointView t = tmpl.centers()[c];
        auto row = out.row(c);
        for (std::size_t i = 0; i < d; ++i) row[i] = center[i] + radius * t[i];
    }
    return out;
}

void sampleUnitBall(const NormSpec& norm, std::size_t d, Rng& rng, std::span<double> out) {
    const double half = 1.0 / norm.lowerConstant(d);
    do {
        for (std::size_t i = 0; i < d; ++i) out[i] = rng.uniform(-half, half);
    } while (norm.norm(out) > 1.0);
}

}  // namespace ccoll
