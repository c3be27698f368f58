#include "ccoll/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccoll/error.hpp"

namespace ccoll::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string lineError(std::size_t line, const std::string& what) { return "line " + std::to_string(line) + ": " + what; }

// Splits on commas and parses every field as a finite double.
std::vector<double> parseRow(std::string_view text, std::size_t line) {
    std::vector<double> values;
    std::size_t field = 0;
    while (true) {
        const std::size_t comma = text.find(',');
        const std::string_view raw = trim(text.substr(0, comma));
        ++field;
        double v = 0.0;
        const char* end = raw.data() + raw.size();
        const auto [ptr, ec] = std::from_chars(raw.data(), end, v);
        if (raw.empty() || ec != std::errc() || ptr != end) {
            throw InputError(lineError(line, "field " + std::to_string(field) + " is not a number: '" +
                                                 std::string(raw) + "'"));
        }
        if (!std::isfinite(v)) throw InputError(lineError(line, "field " + std::to_string(field) + " is not finite"));
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return values;
}

template <class F>
void forEachLine(std::string_view text, F&& f) {
    std::size_t line = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        ++line;
        f(text.substr(0, nl), line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
}

Json pointJson(PointView p) { return Json(std::vector<double>(p.begin(), p.end())); }

Json matrixJson(const PointMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(pointJson(m[i]));
    return rows;
}

Json finiteOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

[[noreturn]] void schemaFail(const std::string& what) { throw SchemaError("collection file: " + what); }

const Json& field(const Json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) schemaFail(std::string("missing field '") + name + "'");
    return *it;
}

double numberField(const Json& doc, const char* name) {
    const Json& v = field(doc, name);
    if (!v.is_number()) schemaFail(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

std::size_t countField(const Json& doc, const char* name) {
    const Json& v = field(doc, name);
    if (!v.is_number_unsigned()) schemaFail(std::string("field '") + name + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

PointMatrix matrixField(const Json& rows, const char* name, std::size_t dim) {
    if (!rows.is_array()) schemaFail(std::string("field '") + name + "' must be an array");
    PointMatrix out(dim);
    out.reserve(rows.size());
    Point p(dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || row.size() != dim) {
            schemaFail(std::string(name) + "[" + std::to_string(i) + "] must have " + std::to_string(dim) +
                       " coordinates");
        }
        for (std::size_t a = 0; a < dim; ++a) {
            if (!row[a].is_number()) schemaFail(std::string(name) + "[" + std::to_string(i) + "] is not numeric");
            p[a] = row[a].get<double>();
        }
        out.push_back(p);
    }
    return out;
}

CoveringConstruction parseConstruction(const std::string& name) {
    for (auto c : {CoveringConstruction::EuclideanGrid, CoveringConstruction::LinfGrid, CoveringConstruction::LpGrid,
                   CoveringConstruction::BlackBoxGrid}) {
        if (constructionName(c) == name) return c;
    }
    schemaFail("unknown template construction '" + name + "'");
}

}  // namespace

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PointSet parsePoints(std::string_view text) {
    PointMatrix rows;
    std::size_t dim = 0;
    forEachLine(text, [&](std::string_view line, std::size_t number) {
        if (trim(line).empty()) return;
        const std::vector<double> values = parseRow(line, number);
        if (dim == 0) {
            dim = values.size();
            rows = PointMatrix(dim);
        } else if (values.size() != dim) {
            throw InputError(lineError(number, "expected " + std::to_string(dim) + " coordinates, found " +
                                                   std::to_string(values.size())));
        }
        rows.push_back(values);
    });
    if (dim == 0) throw InputError(lineError(1, "no points in input"));
    return PointSet::fromRows(rows);
}

CostTables parseCosts(std::string_view text, std::size_t k, std::size_t n) {
    std::vector<std::vector<double>> rows;
    forEachLine(text, [&](std::string_view line, std::size_t number) {
        if (trim(line).empty()) return;
        std::vector<double> values = parseRow(line, number);
        if (values.size() != n) {
            throw InputError(lineError(number, "expected " + std::to_string(n) + " costs (one per input point), found " +
                                                   std::to_string(values.size())));
        }
        for (double v : values) {
            if (v < 0.0) throw InputError(lineError(number, "costs and exponents must be >= 0"));
        }
        rows.push_back(std::move(values));
    });
    if (rows.size() != k && rows.size() != 2 * k) {
        throw InputError("cost file needs " + std::to_string(k) + " or " + std::to_string(2 * k) + " rows, found " +
                         std::to_string(rows.size()));
    }
    CostTables out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& target = r < k ? out.unitCosts : out.exponents;
        target.insert(target.end(), rows[r].begin(), rows[r].end());
    }
    return out;
}

Json collectionHeader(const CentersCollection& collection, bool timing) {
    const CollectionInfo& info = collection.info();
    Json doc;
    doc["format"] = kCollectionFormat;
    doc["version"] = kCollectionVersion;
    doc["epsilon"] = info.epsilon;
    doc["norm"] = info.norm;
    doc["builder"] = builderName(info.builder);
    doc["dim"] = collection.dim();
    doc["n"] = info.inputCount;
    doc["s"] = info.pairCount;
    doc["I"] = info.levels;
    doc["template_size"] = info.templateSize;
    doc["template_sigma"] = info.templateSigma;
    doc["candidate_count"] = collection.size();
    if (timing) doc["build_ms"] = info.buildMs;
    return doc;
}

Json collectionToJson(const CentersCollection& collection, const CollectionWriteOptions& options) {
    Json doc = collectionHeader(collection, options.timing);
    if (options.expand) {
        const double count = static_cast<double>(collection.size());
        if (count > kExpandLimit) {
            throw ResourceError("listing " + std::to_string(collection.size()) + " candidates exceeds the limit of " +
                                    std::to_string(static_cast<std::size_t>(kExpandLimit)),
                                count, kExpandLimit);
        }
        doc["candidates"] = matrixJson(collection.materialize());
        doc["template"] = nullptr;
        doc["blocks"] = Json::array();
        return doc;
    }
    doc["candidates"] = matrixJson(collection.explicitPoints());
    if (const CoveringTemplate* tmpl = collection.coveringTemplate()) {
        doc["template"] = {{"construction", constructionName(tmpl->construction())},
                           {"sigma", tmpl->sigma()},
                           {"spacing", tmpl->spacing()},
                           {"centers", matrixJson(tmpl->centers())}};
    } else {
        doc["template"] = nullptr;
    }
    Json blocks = Json::array();
    for (const CandidateBlock& b : collection.blocks()) blocks.push_back(Json::array({b.anchor, b.scale, b.coverRadius}));
    doc["blocks"] = std::move(blocks);
    return doc;
}

std::string emitCollection(const CentersCollection& collection, const CollectionWriteOptions& options) {
    return dumpLine(collectionToJson(collection, options));
}

CentersCollection loadCollection(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        schemaFail(std::string("not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) schemaFail("top level must be an object");
    const Json& format = field(doc, "format");
    if (!format.is_string() || format.get<std::string>() != kCollectionFormat) {
        schemaFail("format must be '" + std::string(kCollectionFormat) + "'");
    }
    const Json& version = field(doc, "version");
    if (!version.is_number_integer() || version.get<long long>() != kCollectionVersion) {
        schemaFail("unsupported version: expected " + std::to_string(kCollectionVersion) + ", found " + version.dump());
    }
    CollectionInfo info;
    info.epsilon = numberField(doc, "epsilon");
    const Json& normTag = field(doc, "norm");
    if (!normTag.is_string()) schemaFail("field 'norm' must be a string");
    info.norm = normTag.get<std::string>();
    const Json& builderTag = field(doc, "builder");
    if (!builderTag.is_string()) schemaFail("field 'builder' must be a string");
    const auto builder = parseBuilder(builderTag.get<std::string>());
    if (!builder) schemaFail("unknown builder '" + builderTag.get<std::string>() + "'");
    info.builder = *builder;
    info.inputCount = countField(doc, "n");
    info.pairCount = countField(doc, "s");
    info.levels = static_cast<int>(countField(doc, "I"));
    info.templateSize = countField(doc, "template_size");
    info.templateSigma = numberField(doc, "template_sigma");
    if (doc.contains("build_ms")) info.buildMs = numberField(doc, "build_ms");
    const std::size_t dim = countField(doc, "dim");
    if (dim == 0) schemaFail("dim must be positive");

    const Json& candidates = field(doc, "candidates");
    if (!candidates.is_array() || candidates.empty()) schemaFail("candidates must be a nonempty array");
    PointMatrix explicitPoints = matrixField(candidates, "candidates", dim);

    const Json& blocksJson = field(doc, "blocks");
    if (!blocksJson.is_array()) schemaFail("blocks must be an array");
    const Json& tmplJson = field(doc, "template");
    const std::size_t expected = countField(doc, "candidate_count");

    if (tmplJson.is_null()) {
        if (!blocksJson.empty()) schemaFail("blocks require a template");
        if (explicitPoints.size() != expected) {
            schemaFail("candidate_count is " + std::to_string(expected) + " but " +
                       std::to_string(explicitPoints.size()) + " candidates are listed");
        }
        return CentersCollection(std::move(explicitPoints), info);
    }
    if (!tmplJson.is_object()) schemaFail("template must be an object or null");
    NormSpec norm = NormSpec::l2();
    try {
        norm = NormSpec::parse(info.norm);
    } catch (const Error&) {
        schemaFail("norm '" + info.norm + "' cannot be reconstructed from a file");
    }
    const Json& construction = field(tmplJson, "construction");
    if (!construction.is_string()) schemaFail("template construction must be a string");
    PointMatrix centers = matrixField(field(tmplJson, "centers"), "template.centers", dim);
    if (centers.empty()) schemaFail("template has no centers");
    auto tmpl = std::make_shared<const CoveringTemplate>(std::move(centers), numberField(tmplJson, "sigma"), norm,
                                                         parseConstruction(construction.get<std::string>()),
                                                         numberField(tmplJson, "spacing"));
    std::vector<CandidateBlock> blocks;
    blocks.reserve(blocksJson.size());
    for (std::size_t i = 0; i < blocksJson.size(); ++i) {
        const Json& b = blocksJson[i];
        if (!b.is_array() || b.size() != 3 || !b[0].is_number_unsigned() || !b[1].is_number() || !b[2].is_number()) {
            schemaFail("blocks[" + std::to_string(i) + "] must be [anchor, scale, coverRadius]");
        }
        const auto anchor = b[0].get<std::size_t>();
        if (anchor >= explicitPoints.size()) schemaFail("blocks[" + std::to_string(i) + "] anchor out of range");
        blocks.push_back({static_cast<std::uint32_t>(anchor), b[1].get<double>(), b[2].get<double>()});
    }
    CentersCollection out(std::move(explicitPoints), std::move(tmpl), std::move(blocks), info);
    if (out.size() != expected) {
        schemaFail("candidate_count is " + std::to_string(expected) + " but the blocks describe " +
                   std::to_string(out.size()));
    }
    return out;
}

Json probeReportToJson(const ProbeReport& report, std::uint64_t seed) {
    Json doc;
    doc["epsilon"] = report.epsilon;
    doc["seed"] = seed;
    doc["probes"] = report.probes;
    doc["exact"] = report.exact;
    doc["source_counts"] = {{"uniform", report.sourceCounts[0]},
                            {"gaussian", report.sourceCounts[1]},
                            {"lens", report.sourceCounts[2]},
                            {"far", report.sourceCounts[3]}};
    doc["bound"] = (1.0 + report.epsilon) * (1.0 + kRelativeSlack);
    doc["max_factor"] = finiteOrNull(report.maxFactor);
    doc["argmax_probe"] = report.argmaxProbe;
    doc["argmax_point"] = pointJson(report.argmaxPoint);
    doc["witness"] = report.witness;
    doc["witness_point"] = pointJson(report.witnessPoint);
    doc["histogram"] = std::vector<std::size_t>(report.histogram.begin(), report.histogram.end());
    doc["below_one"] = report.belowOne;
    doc["overflow"] = report.overflow;
    doc["pass"] = report.pass;
    return doc;
}

Json solveResultToJson(const SolveResult& result, const ObjectiveSpec& objective, bool timing) {
    Json doc;
    doc["problem"] = objectiveName(result.kind);
    doc["k"] = objective.k;
    if (objective.m > 0) doc["m"] = objective.m;
    doc["value"] = finiteOrNull(result.value);
    doc["centers"] = matrixJson(result.centers);
    doc["candidate_indices"] = result.candidateIndices;
    Json assignment = Json::array();
    for (std::int64_t a : result.assignment) assignment.push_back(a == kOutlier ? Json("outlier") : Json(a));
    doc["assignment"] = std::move(assignment);
    doc["modulus_exponent"] = objective.modulusExponent();
    doc["guaranteed_ratio"] = result.guaranteedRatio ? Json(*result.guaranteedRatio) : Json(nullptr);
    doc["tuples"] = result.tuples;
    if (timing) doc["wall_ms"] = result.wallMs;
    return doc;
}

Json templateToJson(const CoveringTemplate& tmpl) {
    return {{"d", tmpl.dim()},
            {"sigma", tmpl.sigma()},
            {"norm", tmpl.norm().tag()},
            {"construction", constructionName(tmpl.construction())},
            {"spacing", tmpl.spacing()},
            {"size", tmpl.size()},
            {"centers", matrixJson(tmpl.centers())}};
}

Json wspdToJson(const WspdSet& wspd, const SplitTree& tree, std::size_t n, const NormSpec& norm) {
    Json pairs = Json::array();
    for (const WellSeparatedPair& p : wspd.pairs) {
        pairs.push_back({{"a", p.repA},
                         {"b", p.repB},
                         {"size_a", tree.node(p.nodeA).size()},
                         {"size_b", tree.node(p.nodeB).size()}});
    }
    return {{"n", n}, {"t", wspd.separation}, {"norm", norm.tag()}, {"s", wspd.size()}, {"pairs", std::move(pairs)}};
}

Json wspdCheckToJson(const WspdValidation& v) {
    return {{"subsets", v.subsets},
            {"disjoint", v.disjoint},
            {"coverage", v.coverage},
            {"separation", v.separation},
            {"ok", v.ok()},
            {"counterexample", v.counterexample ? Json(*v.counterexample) : Json(nullptr)}};
}

std::string dumpLine(const Json& doc) { return doc.dump() + "\n"; }

}  // namespace ccoll::io
