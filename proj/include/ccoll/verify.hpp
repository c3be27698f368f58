#pragma once

// Empirical certification of the (1+eps)-collection property: best-factor search over a
// (possibly implicit) candidate set, probe generation, and probe reports.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccoll/collection.hpp"
#include "ccoll/metric.hpp"

namespace ccoll {

struct FactorResult {
    double factor = 0.0;
    std::size_t witness = 0;
};

/// Reference scan over every candidate; ties go to the lowest candidate index.
FactorResult bestFactorBrute(PointView p, const CentersCollection& collection, const PointSet& x,
                             const NormSpec& norm);

/// Exact best-factor search over a collection. The explicit points are scanned first,
/// then each block's lattice point nearest to p. Any candidate that can still improve
/// on the current best lies in the box { q : |x - q|_inf <= best dist(x,p) / c_low for
/// all x }; each block's template points inside it are found through their lattice
/// coordinates, splitting large lattice ranges and dropping pieces that some input
/// already rules out. Returns exactly what bestFactorBrute returns.
class CandidateIndex {
public:
    CandidateIndex(const CentersCollection& collection, const PointSet& x, NormSpec norm);

    FactorResult bestFactor(PointView p) const;

    /// Like bestFactor, but stops at the first candidate found with factor <= threshold.
    /// The result is exact whenever it exceeds the threshold.
    FactorResult witness(PointView p, double threshold) const;

    const CentersCollection& collection() const noexcept { return *collection_; }
    const PointSet& input() const noexcept { return *x_; }
    const NormSpec& norm() const noexcept { return norm_; }

private:
    void buildLattice(const CoveringTemplate& tmpl);
    template <class Metric>
    FactorResult search(PointView p, const Metric& metric, double stopAt) const;

    const CentersCollection* collection_;
    const PointSet* x_;
    NormSpec norm_;
    // Template lattice: center c sits at latticeOrigin_ + spacing_ * k for integer k in
    // [kLow_, kHigh_]; latticeCell_ maps each cell to a template index or -1. Empty
    // when the template is not a lattice, in which case every center is tried.
    double spacing_ = 0.0;
    Point latticeOrigin_;
    std::vector<long> kLow_;
    std::vector<long> kHigh_;
    std::vector<std::int32_t> latticeCell_;
    std::vector<std::uint32_t> seedOrder_;
};

/// One bestFactor call; builds a throwaway index.
FactorResult bestFactor(PointView p, const CentersCollection& collection, const PointSet& x, const NormSpec& norm);

enum class ProbeSource : std::uint8_t { Uniform, Gaussian, Lens, Far };
inline constexpr std::size_t kProbeSources = 4;

struct ProbeMix {
    double uniform = 0.25;
    double gaussian = 0.25;
    double lens = 0.40;
    double far = 0.10;
};

struct ProbeSet {
    PointMatrix points;
    std::vector<ProbeSource> sources;
};

/// Points sampled inside random nonempty lenses L_eps(x1,x2), by rejection in the
/// intersection of the two balls' bounding boxes. A pair whose lens yields nothing in
/// 100 tries is skipped, so fewer than `count` points may come back. Requires n >= 2.
PointMatrix lensStress(const PointSet& x, double epsilon, const NormSpec& norm, std::size_t count,
                       std::uint64_t seed);

/// Deterministic probe set. Lens shortfall (and the whole lens share when n < 2) is
/// made up with extra uniform probes.
ProbeSet generateProbes(const PointSet& x, double epsilon, const NormSpec& norm, std::size_t numProbes,
                        std::uint64_t seed, const ProbeMix& mix = {});

inline constexpr std::size_t kHistogramBins = 10;

struct ProbeReport {
    double epsilon = 0.0;
    std::size_t probes = 0;
    std::array<std::size_t, kProbeSources> sourceCounts{};
    double maxFactor = 0.0;  // +inf when some probe has no finite witness
    std::size_t argmaxProbe = 0;
    Point argmaxPoint;
    std::size_t witness = 0;
    Point witnessPoint;
    bool exact = false;  // factors are exact minima rather than first witnesses
    std::array<std::size_t, kHistogramBins> histogram{};  // equal bins over [1, 1+eps]
    std::size_t belowOne = 0;
    std::size_t overflow = 0;
    bool pass = false;
};

struct ProbeOptions {
    int threads = 1;
    ProbeMix mix{};
    /// Minimize every probe's factor exactly. By default each probe stops at the first
    /// witness within (1+eps)(1 + 1e-9); the pass verdict is the same either way.
    bool exact = false;
};

/// Evaluates every probe and reduces. Throws InputError for numProbes = 0.
ProbeReport probeVerify(const PointSet& x, const CentersCollection& collection, double epsilon,
                        const NormSpec& norm, std::size_t numProbes, std::uint64_t seed,
                        const ProbeOptions& options = {});

/// Reduction of per-probe results into a report (argmax ties go to the lowest probe).
ProbeReport reduceProbes(const ProbeSet& probes, std::span<const FactorResult> results,
                         const CentersCollection& collection, double epsilon);

namespace kernels {

/// Witness search per probe (see CandidateIndex::witness); threshold = -inf minimizes exactly.
void evaluateProbesSerial(const CandidateIndex& index, const PointMatrix& probes, double threshold,
                          std::span<FactorResult> out);
void evaluateProbesOmp(const CandidateIndex& index, const PointMatrix& probes, double threshold,
                       std::span<FactorResult> out, int threads);

}  // namespace kernels

}  // namespace ccoll
