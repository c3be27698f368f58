#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ccoll/error.hpp"
#include "ccoll/metric.hpp"
#include "ccoll/rng.hpp"
#include "test_support.hpp"

using namespace ccoll;
using ccoll::testing::pointsOf;

namespace {

const Point kOrigin2{0.0, 0.0};
const Point k34{3.0, 4.0};

PointMatrix line(std::initializer_list<double> xs) { return PointMatrix(1, std::vector<double>(xs)); }

std::vector<NormSpec> allNorms() {
    return {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), NormSpec::lp(3.0), NormSpec::lp(1.5)};
}

}  // namespace

TEST(Distance, PythagoreanL2) { EXPECT_DOUBLE_EQ(distance(kOrigin2, k34, NormSpec::l2()), 5.0); }

TEST(Distance, MaxCoordinateLinf) { EXPECT_DOUBLE_EQ(distance(kOrigin2, k34, NormSpec::linf()), 4.0); }

TEST(Distance, SumOfCoordinatesL1) { EXPECT_DOUBLE_EQ(distance(kOrigin2, k34, NormSpec::l1()), 7.0); }

TEST(Distance, DimensionMismatchIsInputError) {
    const Point a{1.0};
    EXPECT_THROW(distance(a, k34, NormSpec::l2()), InputError);
}

TEST(Distance, MetricAxiomsOnRandomTriples) {
    for (const NormSpec& norm : allNorms()) {
        Rng rng(11, Stream::Validation);
        for (int trial = 0; trial < 1000; ++trial) {
            Point a(3), b(3), c(3);
            for (std::size_t i = 0; i < 3; ++i) {
                a[i] = rng.uniform(-5, 5);
                b[i] = rng.uniform(-5, 5);
                c[i] = rng.uniform(-5, 5);
            }
            const double ab = distance(a, b, norm);
            const double bc = distance(b, c, norm);
            const double ac = distance(a, c, norm);
            EXPECT_LE(ac, (ab + bc) * (1.0 + 1e-12)) << norm.tag();
            EXPECT_DOUBLE_EQ(ab, distance(b, a, norm)) << norm.tag();
            EXPECT_EQ(distance(a, a, norm), 0.0);
            EXPECT_GT(ab, 0.0);
        }
    }
}

TEST(SetMeasures, DiameterOfLineSet) { EXPECT_DOUBLE_EQ(setDiameter(line({0, 1, 10}), NormSpec::l2()), 10.0); }

TEST(SetMeasures, SetDistanceBetweenClusters) {
    EXPECT_DOUBLE_EQ(setDistance(line({0, 1}), line({10, 11}), NormSpec::l2()), 9.0);
}

TEST(SetMeasures, SingletonHasZeroDiameter) { EXPECT_EQ(setDiameter(line({4}), NormSpec::l2()), 0.0); }

TEST(SetMeasures, EmptyListsAreInputErrors) {
    EXPECT_THROW(setDiameter(PointMatrix(1), NormSpec::l2()), InputError);
    EXPECT_THROW(setDistance(PointMatrix(1), line({1}), NormSpec::l2()), InputError);
}

TEST(ApproximationFactor, IdentityIsOne) {
    const PointSet x = pointsOf(1, {0, 10});
    const Point p{3.0};
    EXPECT_EQ(approximationFactor(p, p, x, NormSpec::l2()), 1.0);
}

TEST(ApproximationFactor, SingleRatio) {
    const PointSet x = pointsOf(1, {0});
    EXPECT_DOUBLE_EQ(approximationFactor(Point{1.0}, Point{2.0}, x, NormSpec::l2()), 2.0);
}

TEST(ApproximationFactor, MaxOverInputs) {
    // dist(0,q)/dist(0,p) = 0/1 and dist(10,q)/dist(10,p) = 10/9.
    const PointSet x = pointsOf(1, {0, 10});
    EXPECT_DOUBLE_EQ(approximationFactor(Point{1.0}, Point{0.0}, x, NormSpec::l2()), 10.0 / 9.0);
}

TEST(ApproximationFactor, ZeroOverZeroAndPositiveOverZero) {
    const PointSet x = pointsOf(1, {0});
    EXPECT_EQ(approximationFactor(Point{0.0}, Point{0.0}, x, NormSpec::l2()), 1.0);
    EXPECT_EQ(approximationFactor(Point{0.0}, Point{1.0}, x, NormSpec::l2()),
              std::numeric_limits<double>::infinity());
}

TEST(ApproximationFactor, NearestInputIsTwoApproximation) {
    for (const NormSpec& norm : allNorms()) {
        const PointSet x = ccoll::testing::uniformInstance(20, 2, 3);
        Rng rng(5, Stream::Uniform);
        for (int trial = 0; trial < 2000; ++trial) {
            const Point p{rng.uniform(-1, 2), rng.uniform(-1, 2)};
            const std::size_t j = nearestInput(p, x, norm);
            EXPECT_LE(approximationFactor(p, x[j], x, norm), 2.0 * (1.0 + kRelativeSlack)) << norm.tag();
        }
    }
}

TEST(NearestInput, TiesGoToLowestIndex) {
    const PointSet x = pointsOf(1, {-1, 1});
    EXPECT_EQ(nearestInput(Point{0.0}, x, NormSpec::l2()), 0u);
}

TEST(PointSetIngestion, DuplicatesMergeIntoMultiplicities) {
    const PointSet x = pointsOf(2, {1, 2, 3, 4, 1, 2, 1, 2});
    ASSERT_EQ(x.size(), 2u);
    EXPECT_EQ(x.multiplicity(0), 3u);
    EXPECT_EQ(x.multiplicity(1), 1u);
    EXPECT_EQ(x.totalMultiplicity(), 4u);
    EXPECT_EQ(x.expanded().size(), 4u);
}

TEST(PointSetIngestion, EmptySetIsInputError) { EXPECT_THROW(PointSet::fromRows(PointMatrix(2)), InputError); }

TEST(NormSpecTest, LpEquivalenceConstants) {
    EXPECT_DOUBLE_EQ(NormSpec::l1().upperConstant(4), 4.0);
    EXPECT_DOUBLE_EQ(NormSpec::l2().upperConstant(4), 2.0);
    EXPECT_DOUBLE_EQ(NormSpec::linf().upperConstant(4), 1.0);
    EXPECT_DOUBLE_EQ(NormSpec::lp(3.0).lowerConstant(4), 1.0);
}

TEST(NormSpecTest, ParseTags) {
    EXPECT_TRUE(NormSpec::parse("l2").isEuclidean());
    EXPECT_TRUE(NormSpec::parse("linf").isChebyshev());
    EXPECT_TRUE(NormSpec::parse("lp:inf").isChebyshev());
    EXPECT_DOUBLE_EQ(NormSpec::parse("lp:3").exponent(), 3.0);
    EXPECT_EQ(NormSpec::parse("l1").tag(), "l1");
    EXPECT_THROW(NormSpec::parse("lp:0.5"), ParameterError);
    EXPECT_THROW(NormSpec::parse("manhattan"), InputError);
}

TEST(NormSpecTest, BlackBoxAcceptsValidConstants) {
    // Weighted l1: |x| = 2|x_1| + |x_2| lies between |x|_inf and 3 |x|_inf.
    const NormFunction weighted = [](PointView v) { return 2.0 * std::abs(v[0]) + std::abs(v[1]); };
    const NormSpec norm = NormSpec::blackBox("weighted", weighted, 2, 1.0, 3.0);
    EXPECT_EQ(norm.kind(), NormKind::BlackBox);
    EXPECT_DOUBLE_EQ(distance(kOrigin2, k34, norm), 10.0);
}

TEST(NormSpecTest, BlackBoxRejectsViolatedConstants) {
    const NormFunction weighted = [](PointView v) { return 2.0 * std::abs(v[0]) + std::abs(v[1]); };
    EXPECT_THROW(NormSpec::blackBox("weighted", weighted, 2, 1.0, 2.0), BuildError);
    EXPECT_THROW(NormSpec::blackBox("weighted", weighted, 2, 1.5, 3.0), BuildError);
}

TEST(BallTest, ContainsBoundary) {
    const Ball b(Point{0.0, 0.0}, 5.0);
    EXPECT_TRUE(b.contains(k34, NormSpec::l2()));
    EXPECT_FALSE(b.contains(k34, NormSpec::l1()));
    EXPECT_THROW(Ball(Point{0.0}, -1.0), ParameterError);
}
