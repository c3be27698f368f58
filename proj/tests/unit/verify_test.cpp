#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ccoll/collection.hpp"
#include "ccoll/error.hpp"
#include "ccoll/rng.hpp"
#include "ccoll/verify.hpp"
#include "test_support.hpp"

using namespace ccoll;
using ccoll::testing::pointsOf;
using ccoll::testing::uniformInstance;

namespace {

CentersCollection inputOnly(const PointSet& x) { return CentersCollection(x.points(), CollectionInfo{}); }

CentersCollection explicitCollection(std::size_t dim, std::vector<double> coords) {
    return CentersCollection(PointMatrix(dim, std::move(coords)), CollectionInfo{});
}

}  // namespace

TEST(BestFactor, InputPointIsItsOwnWitness) {
    const PointSet x = uniformInstance(10, 2, 1);
    const CentersCollection c = buildLinear(x, 0.5, NormSpec::l2());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const FactorResult r = bestFactor(x[i], c, x, NormSpec::l2());
        EXPECT_EQ(r.factor, 1.0);
        EXPECT_EQ(r.witness, i);
    }
}

TEST(BestFactor, TwoPointLineByHand) {
    // Candidate 0: max(0/4, 10/6) = 5/3; candidate 10: max(10/4, 0/6) = 5/2.
    const PointSet x = pointsOf(1, {0, 10});
    const FactorResult r = bestFactor(Point{4.0}, inputOnly(x), x, NormSpec::l2());
    EXPECT_DOUBLE_EQ(r.factor, 5.0 / 3.0);
    EXPECT_EQ(r.witness, 0u);
}

TEST(BestFactor, InputOnlyIsTwoCollection) {
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        const PointSet x = uniformInstance(25, 3, 2);
        const CentersCollection c = inputOnly(x);
        const CandidateIndex index(c, x, norm);
        Rng rng(3, Stream::Uniform);
        for (int s = 0; s < 2000; ++s) {
            const Point p{rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)};
            const FactorResult r = index.bestFactor(p);
            EXPECT_LE(r.factor, 2.0 * (1.0 + kRelativeSlack));
            // No worse than the nearest input point.
            EXPECT_LE(r.factor, approximationFactor(p, x[nearestInput(p, x, norm)], x, norm));
        }
    }
}

TEST(BestFactor, TiesGoToLowestCandidate) {
    const PointSet x = pointsOf(1, {0, 2});
    const CentersCollection c = explicitCollection(1, {1.0, 1.0, 1.0});
    EXPECT_EQ(bestFactor(Point{1.0}, c, x, NormSpec::l2()).witness, 0u);
}

TEST(CandidateIndexTest, MatchesBruteForceScan) {
    struct Case {
        NormSpec norm;
        std::size_t d;
        BuilderKind builder;
        double eps;
    };
    const std::vector<Case> cases = {
        {NormSpec::l2(), 1, BuilderKind::Linear, 0.25},    {NormSpec::l2(), 2, BuilderKind::Quadratic, 0.5},
        {NormSpec::l1(), 2, BuilderKind::Linear, 0.5},     {NormSpec::linf(), 2, BuilderKind::Linear, 0.5},
        {NormSpec::linf(), 3, BuilderKind::Quadratic, 0.5}, {NormSpec::lp(3.0), 2, BuilderKind::Linear, 0.5},
    };
    for (const Case& c : cases) {
        const PointSet x = uniformInstance(6, c.d, 4);
        const CentersCollection coll = buildCollection(c.builder, x, c.eps, c.norm);
        const CandidateIndex index(coll, x, c.norm);
        const ProbeSet probes = generateProbes(x, c.eps, c.norm, 150, 7);
        for (std::size_t i = 0; i < probes.points.size(); ++i) {
            const FactorResult fast = index.bestFactor(probes.points[i]);
            const FactorResult brute = bestFactorBrute(probes.points[i], coll, x, c.norm);
            EXPECT_EQ(fast.factor, brute.factor) << c.norm.tag() << " probe " << i;
            EXPECT_EQ(fast.witness, brute.witness) << c.norm.tag() << " probe " << i;
        }
    }
}

TEST(CandidateIndexTest, WitnessIsExactAboveThreshold) {
    const PointSet x = uniformInstance(12, 2, 5);
    const CentersCollection coll = buildLinear(x, 0.5, NormSpec::l1());
    const CandidateIndex index(coll, x, NormSpec::l1());
    const ProbeSet probes = generateProbes(x, 0.5, NormSpec::l1(), 400, 8);
    for (double threshold : {1.0, 1.2, 1.5}) {
        for (std::size_t i = 0; i < probes.points.size(); ++i) {
            const FactorResult exact = index.bestFactor(probes.points[i]);
            const FactorResult w = index.witness(probes.points[i], threshold);
            if (w.factor > threshold) {
                EXPECT_EQ(w.factor, exact.factor);
            } else {
                EXPECT_GE(w.factor, exact.factor);
                // The witness really attains its reported factor.
                EXPECT_EQ(approximationFactor(probes.points[i], coll.candidate(w.witness), x, NormSpec::l1()),
                          w.factor);
            }
        }
    }
}

TEST(BestFactor, MonotoneUnderUnion) {
    const PointSet x = uniformInstance(8, 2, 6);
    const CentersCollection a = buildLinear(x, 0.5, NormSpec::l2());
    const CentersCollection b = buildQuadratic(x, 0.5, NormSpec::l2());
    PointMatrix both = a.materialize();
    const PointMatrix bm = b.materialize();
    for (std::size_t i = 0; i < bm.size(); ++i) both.push_back(bm[i]);
    const CentersCollection u(both, CollectionInfo{});
    const ProbeSet probes = generateProbes(x, 0.5, NormSpec::l2(), 200, 9);
    for (std::size_t i = 0; i < probes.points.size(); ++i) {
        const double fa = bestFactor(probes.points[i], a, x, NormSpec::l2()).factor;
        const double fb = bestFactor(probes.points[i], b, x, NormSpec::l2()).factor;
        EXPECT_LE(bestFactor(probes.points[i], u, x, NormSpec::l2()).factor, std::min(fa, fb));
    }
}

TEST(ProbeVerifyTest, LinearAndQuadraticPassOnPlanarInstance) {
    const PointSet x = uniformInstance(64, 2, 12);
    for (BuilderKind builder : {BuilderKind::Linear, BuilderKind::Quadratic}) {
        const CentersCollection c = buildCollection(builder, x, 0.5, NormSpec::l2());
        const ProbeReport r = probeVerify(x, c, 0.5, NormSpec::l2(), 2000, 42);
        EXPECT_TRUE(r.pass) << builderName(builder) << " max " << r.maxFactor;
        EXPECT_LE(r.maxFactor, 1.5 * (1.0 + kRelativeSlack));
    }
}

TEST(ProbeVerifyTest, InputOnlyFailsBelowTwo) {
    // The midpoint of {0,1} has best factor 2 over the inputs alone.
    const PointSet x = pointsOf(1, {0, 1});
    EXPECT_DOUBLE_EQ(bestFactor(Point{0.5}, inputOnly(x), x, NormSpec::l2()).factor, 2.0);
    const ProbeReport r = probeVerify(x, inputOnly(x), 0.25, NormSpec::l2(), 1000, 42);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.maxFactor, 1.25);
    EXPECT_GT(r.overflow, 0u);
}

TEST(ProbeVerifyTest, InputOnlyPassesAtEpsilonOne) {
    const PointSet x = uniformInstance(30, 2, 13);
    const CentersCollection c = buildLinear(x, 1.0, NormSpec::l2());
    EXPECT_EQ(c.info().builder, BuilderKind::InputOnly);
    EXPECT_TRUE(probeVerify(x, c, 1.0, NormSpec::l2(), 3000, 42).pass);
}

TEST(ProbeVerifyTest, ZeroProbesIsInputError) {
    const PointSet x = pointsOf(1, {0, 1});
    EXPECT_THROW(probeVerify(x, inputOnly(x), 0.5, NormSpec::l2(), 0, 42), InputError);
}

TEST(ProbeVerifyTest, ReportInvariants) {
    const PointSet x = uniformInstance(16, 2, 14);
    const CentersCollection c = buildLinear(x, 0.25, NormSpec::linf());
    for (bool exact : {false, true}) {
        ProbeOptions options;
        options.exact = exact;
        const ProbeReport r = probeVerify(x, c, 0.25, NormSpec::linf(), 1500, 3, options);
        EXPECT_EQ(r.exact, exact);
        EXPECT_EQ(std::accumulate(r.sourceCounts.begin(), r.sourceCounts.end(), std::size_t{0}), 1500u);
        const std::size_t binned = std::accumulate(r.histogram.begin(), r.histogram.end(), std::size_t{0});
        EXPECT_EQ(binned + r.belowOne + r.overflow, 1500u);
        EXPECT_EQ(r.pass, r.maxFactor <= 1.25 * (1.0 + kRelativeSlack));
        EXPECT_EQ(approximationFactor(r.argmaxPoint, r.witnessPoint, x, NormSpec::linf()), r.maxFactor);
    }
}

TEST(ProbeVerifyTest, ExactAndWitnessModesAgreeOnVerdict) {
    const PointSet x = uniformInstance(10, 2, 15);
    const CentersCollection c = buildLinear(x, 0.5, NormSpec::l2());
    for (double eps : {0.5, 0.02}) {
        ProbeOptions exact;
        exact.exact = true;
        const ProbeReport a = probeVerify(x, c, eps, NormSpec::l2(), 1000, 5);
        const ProbeReport b = probeVerify(x, c, eps, NormSpec::l2(), 1000, 5, exact);
        EXPECT_EQ(a.pass, b.pass);
        EXPECT_EQ(a.overflow, b.overflow);
        if (!a.pass) EXPECT_EQ(a.maxFactor, b.maxFactor);
    }
}

TEST(ProbeVerifyTest, DeterministicAcrossThreads) {
    const PointSet x = uniformInstance(16, 3, 16);
    const CentersCollection c = buildQuadratic(x, 0.5, NormSpec::l1());
    ProbeOptions one, four;
    four.threads = 4;
    const ProbeReport a = probeVerify(x, c, 0.5, NormSpec::l1(), 2000, 42, one);
    const ProbeReport b = probeVerify(x, c, 0.5, NormSpec::l1(), 2000, 42, four);
    EXPECT_EQ(a.maxFactor, b.maxFactor);
    EXPECT_EQ(a.argmaxProbe, b.argmaxProbe);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_EQ(a.sourceCounts, b.sourceCounts);
}

TEST(ProbeKernels, SerialAndOpenMpAgree) {
    const PointSet x = uniformInstance(12, 2, 17);
    const CentersCollection c = buildLinear(x, 0.5, NormSpec::l2());
    const CandidateIndex index(c, x, NormSpec::l2());
    const ProbeSet probes = generateProbes(x, 0.5, NormSpec::l2(), 1000, 18);
    for (double threshold : {-std::numeric_limits<double>::infinity(), 1.5}) {
        std::vector<FactorResult> serial(probes.points.size()), omp(probes.points.size());
        kernels::evaluateProbesSerial(index, probes.points, threshold, serial);
        kernels::evaluateProbesOmp(index, probes.points, threshold, omp, 4);
        for (std::size_t i = 0; i < serial.size(); ++i) {
            EXPECT_EQ(serial[i].factor, omp[i].factor);
            EXPECT_EQ(serial[i].witness, omp[i].witness);
        }
    }
}

TEST(ProbeGeneration, DeterministicAndMixed) {
    const PointSet x = uniformInstance(20, 2, 19);
    const ProbeSet a = generateProbes(x, 0.5, NormSpec::l2(), 1000, 42);
    const ProbeSet b = generateProbes(x, 0.5, NormSpec::l2(), 1000, 42);
    const ProbeSet c = generateProbes(x, 0.5, NormSpec::l2(), 1000, 43);
    EXPECT_EQ(a.points, b.points);
    EXPECT_NE(a.points, c.points);
    ASSERT_EQ(a.points.size(), 1000u);
    std::array<std::size_t, kProbeSources> counts{};
    for (ProbeSource s : a.sources) ++counts[static_cast<std::size_t>(s)];
    EXPECT_EQ(counts[static_cast<std::size_t>(ProbeSource::Uniform)], 250u);
    EXPECT_EQ(counts[static_cast<std::size_t>(ProbeSource::Gaussian)], 250u);
    EXPECT_EQ(counts[static_cast<std::size_t>(ProbeSource::Lens)], 400u);
    EXPECT_EQ(counts[static_cast<std::size_t>(ProbeSource::Far)], 100u);
}

TEST(LensStressTest, UnitSegmentProbesLieInLensInterval) {
    const PointSet x = pointsOf(1, {0, 1});
    const PointMatrix probes = lensStress(x, 0.5, NormSpec::l2(), 500, 42);
    ASSERT_GT(probes.size(), 0u);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        EXPECT_GE(probes[i][0], 1.0 / 3.0 - 1e-12);
        EXPECT_LE(probes[i][0], 2.0 / 3.0 + 1e-12);
    }
}

TEST(LensStressTest, EveryProbePassesSomeLensMembership) {
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        const PointSet x = uniformInstance(6, 2, 20);
        const PointMatrix probes = lensStress(x, 0.3, norm, 300, 7);
        EXPECT_GT(probes.size(), 0u);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            bool inside = false;
            for (std::size_t a = 0; a < x.size() && !inside; ++a) {
                for (std::size_t b = a + 1; b < x.size() && !inside; ++b) {
                    inside = lensOf(x[a], x[b], 0.3, norm).contains(probes[i]);
                }
            }
            EXPECT_TRUE(inside) << norm.tag();
        }
    }
}
