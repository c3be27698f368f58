#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccoll/collection.hpp"
#include "ccoll/error.hpp"
#include "ccoll/kernels.hpp"
#include "ccoll/rng.hpp"
#include "test_support.hpp"

using namespace ccoll;
using ccoll::testing::pointsOf;
using ccoll::testing::uniformInstance;

namespace {

bool containsRow(const PointMatrix& m, PointView p) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (std::equal(p.begin(), p.end(), m[i].begin())) return true;
    }
    return false;
}

bool sameBlocks(const std::vector<CandidateBlock>& a, const std::vector<CandidateBlock>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].anchor != b[i].anchor || a[i].scale != b[i].scale || a[i].coverRadius != b[i].coverRadius) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(ComputeParams, HalfEpsilon) {
    const ScheduleParams p = computeParams(0.5);
    EXPECT_FALSE(p.inputOnly);
    EXPECT_EQ(p.levels, 7);
    // log_0.5(0.9) = 0.152003..., whose reciprocal 6.579 rounds up to 7.
    EXPECT_NEAR(1.0 / (std::log(0.9) / std::log(0.5)), 6.5788, 1e-4);
    EXPECT_NEAR(p.delta, std::pow(0.5, 8.0 / 7.0), 1e-12 * p.delta);
    EXPECT_NEAR(p.delta, 0.45286, 1e-5);
    EXPECT_DOUBLE_EQ(p.separation, 10.0);
    EXPECT_DOUBLE_EQ(p.templateSigma, 0.15);
}

TEST(ComputeParams, EpsilonOneIsInputOnly) {
    EXPECT_TRUE(computeParams(1.0).inputOnly);
    EXPECT_TRUE(computeParams(3.0).inputOnly);
}

TEST(ComputeParams, SeparationFormula) {
    EXPECT_DOUBLE_EQ(computeParams(0.25).separation, 10.0);
    EXPECT_DOUBLE_EQ(computeParams(0.05).separation, 21.0);
}

TEST(ComputeParams, InvariantsAcrossEpsilon) {
    for (int k = 1; k <= 19; ++k) {
        const double eps = 0.05 * k;
        const ScheduleParams p = computeParams(eps);
        EXPECT_GE(p.delta, 0.9 * eps) << eps;
        EXPECT_DOUBLE_EQ(p.templateSigma, 0.3 * eps);
        EXPECT_EQ(p.levels, static_cast<int>(std::ceil(std::log(eps) / std::log(0.9))));
    }
}

TEST(ComputeParams, NonpositiveEpsilonIsRejected) {
    EXPECT_THROW(computeParams(0.0), ParameterError);
    EXPECT_THROW(computeParams(-0.5), ParameterError);
}

TEST(LensTest, UnitSegmentAtHalf) {
    const Lens lens = lensOf(Point{0.0}, Point{1.0}, 0.5, NormSpec::l2());
    EXPECT_DOUBLE_EQ(lens.radius(), 2.0 / 3.0);
    EXPECT_TRUE(lens.contains(Point{0.5}));
    EXPECT_TRUE(lens.contains(Point{1.0 / 3.0 + 1e-12}));
    EXPECT_FALSE(lens.contains(Point{0.0}));
    EXPECT_FALSE(lens.contains(Point{1.0 / 3.0 - 1e-9}));
    EXPECT_FALSE(lens.contains(Point{2.0 / 3.0 + 1e-9}));
}

TEST(LensTest, LargeEpsilonGivesEmptyLineLens) {
    const Lens lens = lensOf(Point{0.0}, Point{1.0}, 1.5, NormSpec::l2());
    for (double p = -1.0; p <= 2.0; p += 1e-3) EXPECT_FALSE(lens.contains(Point{p}));
}

TEST(LensTest, MembershipIsTwoBallIntersection) {
    const Point a{0.0, 0.0}, b{1.0, 0.5};
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        const Lens lens = lensOf(a, b, 0.3, norm);
        Rng rng(2, Stream::Lens);
        for (int s = 0; s < 2000; ++s) {
            const Point p{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.0)};
            EXPECT_EQ(lens.contains(p), norm.distance(a, p) <= lens.radius() && norm.distance(b, p) <= lens.radius());
        }
    }
}

TEST(LensTest, CoincidentPointsAreInputError) {
    EXPECT_THROW(lensOf(Point{1.0}, Point{1.0}, 0.5, NormSpec::l2()), InputError);
}

TEST(RadiusScheduleTest, EndpointsAndRatio) {
    const RadiusSchedule s = radiusSchedule(1.0, computeParams(0.5));
    ASSERT_EQ(s.levels.size(), 8u);
    EXPECT_NEAR(s.levels.front(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(s.levels.back(), 2.0 / 3.0, 1e-15);
    for (std::size_t i = 1; i < s.levels.size(); ++i) {
        EXPECT_NEAR(s.levels[i] / s.levels[i - 1], std::pow(0.5, -1.0 / 7.0), 1e-12);
        EXPECT_GT(s.levels[i], s.levels[i - 1]);
    }
    EXPECT_NEAR(std::pow(0.5, -1.0 / 7.0), 1.1041, 1e-4);
}

TEST(RadiusScheduleTest, CoverRadiusOfTopLevel) {
    const RadiusSchedule s = radiusSchedule(1.0, computeParams(0.5));
    ASSERT_EQ(s.coverRadii.size(), 7u);
    EXPECT_NEAR(s.coverRadii.back(), (2.0 / 3.0) * 1.2 + 0.1, 1e-15);
    EXPECT_NEAR(s.coverRadii.back(), 0.9, 1e-15);
    for (std::size_t i = 0; i < s.coverRadii.size(); ++i) EXPECT_LE(s.coverRadii[i], 2.2 * s.levels[i + 1]);
}

TEST(RadiusScheduleTest, CoincidentPointsAreInputError) {
    EXPECT_THROW(radiusSchedule(Point{2.0}, Point{2.0}, computeParams(0.5), NormSpec::l2()), InputError);
}

TEST(BuildQuadratic, SinglePointIsInputOnly) {
    const CentersCollection c = buildQuadratic(pointsOf(2, {1, 2}), 0.5, NormSpec::l2());
    EXPECT_EQ(c.size(), 1u);
    EXPECT_EQ(c.info().builder, BuilderKind::InputOnly);
}

TEST(BuildQuadratic, LargeEpsilonIsInputOnly) {
    const PointSet x = uniformInstance(10, 2, 1);
    const CentersCollection c = buildQuadratic(x, 2.0, NormSpec::l2());
    EXPECT_EQ(c.size(), x.size());
    EXPECT_EQ(c.materialize(), x.points());
}

TEST(BuildQuadratic, UnitSegmentCount) {
    // |C_delta| = |euclideanGrid(1, 0.45286)| = 3, so 2 + 2 * 7 * 3 candidates.
    const CentersCollection c = buildQuadratic(pointsOf(1, {0, 1}), 0.5, NormSpec::l2());
    EXPECT_EQ(c.info().templateSize, 3u);
    EXPECT_EQ(c.size(), 44u);
}

TEST(BuildQuadratic, AccountingIdentityAndInputSubset) {
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        const PointSet x = uniformInstance(12, 2, 5);
        const CentersCollection c = buildQuadratic(x, 0.5, norm);
        const std::size_t n = x.size();
        EXPECT_EQ(c.size(), n + n * (n - 1) * 7 * c.info().templateSize) << norm.tag();
        EXPECT_EQ(c.info().pairCount, n * (n - 1));
        const PointMatrix all = c.materialize();
        for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(containsRow(all, x[i]));
    }
}

TEST(BuildLinear, UnitSegmentTrace) {
    const CentersCollection c = buildLinear(pointsOf(1, {0, 1}), 0.5, NormSpec::l2());
    EXPECT_EQ(c.info().pairCount, 1u);
    EXPECT_EQ(c.info().templateSize, euclideanGrid(1, 0.15).size());
    EXPECT_EQ(c.size(), 2 + 2 * 1 * 7 * c.info().templateSize);
    const double reach = 0.9 * 1.15;  // r_7 times the template's norm bound
    const PointMatrix all = c.materialize();
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_GE(all[i][0], -reach - 1e-12);
        EXPECT_LE(all[i][0], 1.0 + reach + 1e-12);
    }
}

TEST(BuildLinear, SinglePointIsInputOnly) {
    EXPECT_EQ(buildLinear(pointsOf(3, {1, 2, 3}), 0.25, NormSpec::l2()).size(), 1u);
}

TEST(BuildLinear, AccountingIdentityAndRadiusCondition) {
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        for (double eps : {0.25, 0.5, 0.9}) {
            const PointSet x = uniformInstance(40, 2, 6);
            const CentersCollection c = buildLinear(x, eps, norm);
            const ScheduleParams p = computeParams(eps);
            const std::size_t levels = static_cast<std::size_t>(p.levels);
            EXPECT_EQ(c.size(), x.size() + 2 * c.info().pairCount * levels * c.info().templateSize);
            EXPECT_EQ(c.blocks().size(), 2 * c.info().pairCount * levels);
            for (const CandidateBlock& b : c.blocks()) {
                EXPECT_TRUE(withinBound(p.templateSigma * b.scale, b.coverRadius));
            }
        }
    }
}

TEST(BuildLinear, InputIsSubsetOfCollection) {
    const PointSet x = uniformInstance(30, 3, 7);
    const PointMatrix all = buildLinear(x, 0.5, NormSpec::l2()).materialize();
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_TRUE(containsRow(all, x[i]));
}

TEST(CoveringPremise, BothBuildersHaveNoViolations) {
    for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        const PointSet x = uniformInstance(8, 2, 8);
        for (BuilderKind builder : {BuilderKind::Quadratic, BuilderKind::Linear}) {
            const CentersCollection c = buildCollection(builder, x, 0.5, norm);
            const PremiseReport r = checkCoveringPremise(c, norm, 200, 42);
            EXPECT_EQ(r.balls, c.blocks().size());
            EXPECT_EQ(r.samples, c.blocks().size() * 200);
            EXPECT_EQ(r.violations, 0u) << norm.tag() << " " << builderName(builder);
            EXPECT_LE(r.worstRatio, 1.0 + 1e-9);
        }
    }
}

TEST(CoveringPremise, DetectsUndersizedCoverRadius) {
    const PointSet x = uniformInstance(5, 2, 9);
    const CentersCollection good = buildLinear(x, 0.5, NormSpec::l2());
    std::vector<CandidateBlock> blocks = good.blocks();
    for (CandidateBlock& b : blocks) b.coverRadius *= 0.5;
    const CentersCollection bad(good.explicitPoints(),
                                std::make_shared<const CoveringTemplate>(*good.coveringTemplate()), blocks,
                                good.info());
    EXPECT_GT(checkCoveringPremise(bad, NormSpec::l2(), 200, 42).violations, 0u);
}

TEST(Dedup, ExactDuplicateRemoved) {
    const PointMatrix rows(1, {0.0, 1.0, 0.0, 2.0});
    const CentersCollection c(rows, CollectionInfo{});
    EXPECT_EQ(dedupCandidates(c).size(), 3u);
}

TEST(Dedup, DistinctListIsUnchanged) {
    const PointMatrix rows(1, {0.0, 1.0, 2.0});
    const CentersCollection c(rows, CollectionInfo{});
    EXPECT_EQ(dedupCandidates(c).materialize(), rows);
}

TEST(Dedup, TinyQuantumMergesOnlyExactCopies) {
    // Each of the 14 blocks re-emits its anchor through the template's origin.
    const CentersCollection c = buildLinear(pointsOf(1, {0, 1}), 0.5, NormSpec::l2());
    const std::size_t exact = dedupCandidates(c).size();
    EXPECT_EQ(exact, 2 + 14 * (c.info().templateSize - 1));
    EXPECT_EQ(dedupCandidates(c, 1e-12).size(), exact);
}

TEST(Dedup, NegativeQuantumIsRejected) {
    const CentersCollection c(PointMatrix(1, {0.0}), CollectionInfo{});
    EXPECT_THROW(dedupCandidates(c, -1.0), ParameterError);
}

TEST(Kernels, SerialAndOpenMpEmissionAgree) {
    for (BuilderKind builder : {BuilderKind::Quadratic, BuilderKind::Linear}) {
        const PointSet x = uniformInstance(30, 2, 10);
        const CentersCollection serial = buildCollection(builder, x, 0.25, NormSpec::l1(), BuildOptions{1});
        const CentersCollection parallel = buildCollection(builder, x, 0.25, NormSpec::l1(), BuildOptions{4});
        EXPECT_TRUE(sameBlocks(serial.blocks(), parallel.blocks()));
        EXPECT_EQ(serial.materialize(1), parallel.materialize(4));
    }
}

TEST(Kernels, MaterializeMatchesPerCandidateAccess) {
    const CentersCollection c = buildLinear(uniformInstance(10, 3, 11), 0.5, NormSpec::linf());
    PointMatrix serial(c.dim()), omp(c.dim());
    kernels::materializeSerial(c, serial);
    kernels::materializeOmp(c, omp, 3);
    ASSERT_EQ(serial, omp);
    ASSERT_EQ(serial.size(), c.size());
    for (std::size_t i = 0; i < c.size(); i += 97) {
        const Point p = c.candidate(i);
        EXPECT_TRUE(std::equal(p.begin(), p.end(), serial[i].begin()));
    }
}

TEST(Kernels, EmitBlocksReportsFirstViolation) {
    // A templateSigma far above 0.3 eps breaks the radius condition at pair 0, level 1.
    ScheduleParams p = computeParams(0.5);
    p.templateSigma = 0.9;
    const std::vector<kernels::PairItem> items{{0, 1, 1.0}, {1, 0, 1.0}};
    std::vector<CandidateBlock> out(items.size() * kernels::blocksPerItem(p, BuilderKind::Linear));
    EXPECT_EQ(kernels::emitBlocksSerial(items, p, BuilderKind::Linear, out), 0u);
    EXPECT_EQ(kernels::emitBlocksOmp(items, p, BuilderKind::Linear, out, 2), 0u);
}

TEST(BuilderNames, RoundTrip) {
    for (BuilderKind b : {BuilderKind::Quadratic, BuilderKind::Linear, BuilderKind::InputOnly}) {
        EXPECT_EQ(parseBuilder(builderName(b)), b);
    }
    EXPECT_FALSE(parseBuilder("cubic").has_value());
}
