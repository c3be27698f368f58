#include <gtest/gtest.h>

#include <string>

#include "ccoll/error.hpp"
#include "ccoll/io.hpp"
#include "test_support.hpp"

using namespace ccoll;
using ccoll::testing::pointsOf;
using ccoll::testing::uniformInstance;

namespace {

template <class Fn>
std::string errorMessage(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

void expectRoundTrip(const CentersCollection& c, bool expand) {
    const std::string text = io::emitCollection(c, {expand, false});
    const CentersCollection back = io::loadCollection(text);
    EXPECT_EQ(back.size(), c.size());
    EXPECT_EQ(back.materialize(), c.materialize());
    EXPECT_EQ(back.info().epsilon, c.info().epsilon);
    EXPECT_EQ(back.info().norm, c.info().norm);
    EXPECT_EQ(io::emitCollection(back, {expand, false}), text);
}

}  // namespace

TEST(ParsePoints, ReadsRowsAndInfersDimension) {
    const PointSet x = io::parsePoints("0,0\n3,4\n\n-1.5,2e1\n");
    ASSERT_EQ(x.dim(), 2u);
    ASSERT_EQ(x.size(), 3u);
    EXPECT_EQ(x[2][0], -1.5);
    EXPECT_EQ(x[2][1], 20.0);
}

TEST(ParsePoints, DuplicateRowsBecomeMultiplicities) {
    const PointSet x = io::parsePoints("1,1\n2,2\n1,1\n");
    EXPECT_EQ(x.size(), 2u);
    EXPECT_EQ(x.multiplicity(0), 2u);
}

TEST(ParsePoints, RaggedRowNamesItsLine) {
    const std::string msg = errorMessage([] { io::parsePoints("0,0\n1\n"); });
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("expected 2 coordinates, found 1"), std::string::npos) << msg;
}

TEST(ParsePoints, MalformedInputIsInputError) {
    EXPECT_THROW(io::parsePoints("1,abc\n"), InputError);
    EXPECT_THROW(io::parsePoints("1,inf\n"), InputError);
    EXPECT_THROW(io::parsePoints("\n\n"), InputError);
    EXPECT_THROW(io::parsePoints("1,,2\n"), InputError);
}

TEST(ParsePoints, CarriageReturnsAndSpacesAreTolerated) {
    const PointSet x = io::parsePoints("1, 2\r\n3 ,4\r\n");
    EXPECT_EQ(x.size(), 2u);
    EXPECT_EQ(x[1][0], 3.0);
}

TEST(ParseCosts, UnitCostsOnlyOrWithExponents) {
    const io::CostTables a = io::parseCosts("1,2,3\n4,5,6\n", 2, 3);
    EXPECT_EQ(a.unitCosts, (std::vector<double>{1, 2, 3, 4, 5, 6}));
    EXPECT_TRUE(a.exponents.empty());
    const io::CostTables b = io::parseCosts("1,1\n2,2\n", 1, 2);
    EXPECT_EQ(b.exponents, (std::vector<double>{2, 2}));
    EXPECT_THROW(io::parseCosts("1,2\n", 1, 3), InputError);
    EXPECT_THROW(io::parseCosts("1,2\n3,4\n5,6\n", 2, 2), InputError);
    EXPECT_THROW(io::parseCosts("-1,2\n", 1, 2), InputError);
}

TEST(CollectionFile, LinearRoundTripIsBitExact) {
    expectRoundTrip(buildLinear(pointsOf(1, {0, 1}), 0.5, NormSpec::l2()), false);
    expectRoundTrip(buildLinear(uniformInstance(12, 2, 1), 0.3, NormSpec::l1()), false);
    expectRoundTrip(buildQuadratic(uniformInstance(5, 3, 2), 0.5, NormSpec::linf()), false);
    expectRoundTrip(buildLinear(uniformInstance(6, 2, 3), 0.7, NormSpec::lp(3.0)), false);
}

TEST(CollectionFile, ExpandedRoundTripIsBitExact) {
    expectRoundTrip(buildLinear(uniformInstance(6, 2, 4), 0.5, NormSpec::l2()), true);
    const CentersCollection c = buildLinear(uniformInstance(6, 2, 4), 0.5, NormSpec::l2());
    const io::Json doc = io::collectionToJson(c, {true, false});
    EXPECT_EQ(doc["candidates"].size(), c.size());
    EXPECT_TRUE(doc["template"].is_null());
}

TEST(CollectionFile, InputOnlyRoundTrip) {
    expectRoundTrip(buildLinear(uniformInstance(9, 2, 5), 1.0, NormSpec::l2()), false);
}

TEST(CollectionFile, HeaderFields) {
    const CentersCollection c = buildLinear(pointsOf(1, {0, 1}), 0.5, NormSpec::l2());
    const io::Json h = io::collectionHeader(c, false);
    EXPECT_EQ(h["format"], "ccoll-collection");
    EXPECT_EQ(h["version"], 1);
    EXPECT_EQ(h["builder"], "linear");
    EXPECT_EQ(h["n"], 2);
    EXPECT_EQ(h["s"], 1);
    EXPECT_EQ(h["I"], 7);
    EXPECT_EQ(h["candidate_count"], c.size());
    EXPECT_FALSE(h.contains("build_ms"));
    EXPECT_TRUE(io::collectionHeader(c, true).contains("build_ms"));
}

TEST(CollectionFile, EmptyCandidatesIsSchemaError) {
    io::Json doc = io::collectionToJson(buildLinear(uniformInstance(3, 2, 6), 1.0, NormSpec::l2()));
    doc["candidates"] = io::Json::array();
    EXPECT_THROW(io::loadCollection(doc.dump()), SchemaError);
}

TEST(CollectionFile, VersionMismatchNamesBothVersions) {
    io::Json doc = io::collectionToJson(buildLinear(uniformInstance(3, 2, 6), 1.0, NormSpec::l2()));
    doc["version"] = 2;
    const std::string msg = errorMessage([&] { io::loadCollection(doc.dump()); });
    EXPECT_NE(msg.find("expected 1, found 2"), std::string::npos) << msg;
    EXPECT_THROW(io::loadCollection(doc.dump()), SchemaError);
}

TEST(CollectionFile, MalformedDocumentsAreSchemaErrors) {
    const io::Json good = io::collectionToJson(buildLinear(uniformInstance(4, 2, 7), 0.5, NormSpec::l2()));
    EXPECT_THROW(io::loadCollection("not json"), SchemaError);
    EXPECT_THROW(io::loadCollection("[1,2]"), SchemaError);
    io::Json wrongFormat = good;
    wrongFormat["format"] = "other";
    EXPECT_THROW(io::loadCollection(wrongFormat.dump()), SchemaError);
    io::Json wrongCount = good;
    wrongCount["candidate_count"] = 3;
    EXPECT_THROW(io::loadCollection(wrongCount.dump()), SchemaError);
    io::Json badBlock = good;
    badBlock["blocks"][0] = io::Json::array({999999, 1.0, 1.0});
    EXPECT_THROW(io::loadCollection(badBlock.dump()), SchemaError);
    io::Json missing = good;
    missing.erase("dim");
    EXPECT_THROW(io::loadCollection(missing.dump()), SchemaError);
}

TEST(ReportJson, ProbeReportFields) {
    const PointSet x = uniformInstance(8, 2, 8);
    const CentersCollection c = buildLinear(x, 0.5, NormSpec::l2());
    const ProbeReport r = probeVerify(x, c, 0.5, NormSpec::l2(), 500, 42);
    const io::Json doc = io::probeReportToJson(r, 42);
    EXPECT_EQ(doc["pass"], r.pass);
    EXPECT_EQ(doc["probes"], 500);
    EXPECT_EQ(doc["seed"], 42);
    EXPECT_EQ(doc["histogram"].size(), kHistogramBins);
}

TEST(ReportJson, DumpLineIsSingleLineWithShortestDoubles) {
    io::Json doc;
    doc["a"] = 0.1;
    doc["b"] = 1.0 / 3.0;
    const std::string line = io::dumpLine(doc);
    EXPECT_EQ(line, "{\"a\":0.1,\"b\":0.3333333333333333}\n");
}
