#pragma once

// File formats: point and cost CSV ingestion, the collection file, and the JSON
// reports written by the command-line tool.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ccoll/collection.hpp"
#include "ccoll/covering.hpp"
#include "ccoll/solve.hpp"
#include "ccoll/verify.hpp"
#include "ccoll/wspd.hpp"

namespace ccoll::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kCollectionFormat = "ccoll-collection";
inline constexpr int kCollectionVersion = 1;
/// Largest collection written with every candidate listed explicitly.
inline constexpr double kExpandLimit = 1e7;

/// Throws InputError naming the file when it cannot be read.
std::string readFile(const std::string& path);

/// One point per line, comma-separated decimals; blank lines are skipped. The first
/// row fixes the dimension; identical rows merge into multiplicities. Errors carry the
/// 1-based line number.
PointSet parsePoints(std::string_view text);

struct CostTables {
    std::vector<double> unitCosts;  // k x n
    std::vector<double> exponents;  // k x n, empty when the file has only k rows
};

/// k rows of n unit costs f_ij, optionally followed by k rows of exponents g_ij.
CostTables parseCosts(std::string_view text, std::size_t k, std::size_t n);

struct CollectionWriteOptions {
    bool expand = false;  // list every candidate instead of template + blocks
    bool timing = false;  // include build_ms
};

/// Header fields only: format, version, epsilon, norm, builder, dim, n, s, I,
/// template_size, template_sigma, candidate_count (and build_ms when timing).
Json collectionHeader(const CentersCollection& collection, bool timing);
Json collectionToJson(const CentersCollection& collection, const CollectionWriteOptions& options = {});
std::string emitCollection(const CentersCollection& collection, const CollectionWriteOptions& options = {});

/// Inverse of emitCollection; candidates are recomputed bit-exactly. Throws
/// SchemaError on malformed documents or a version mismatch.
CentersCollection loadCollection(std::string_view text);

Json probeReportToJson(const ProbeReport& report, std::uint64_t seed);
Json solveResultToJson(const SolveResult& result, const ObjectiveSpec& objective, bool timing);
Json templateToJson(const CoveringTemplate& tmpl);
Json wspdToJson(const WspdSet& wspd, const SplitTree& tree, std::size_t n, const NormSpec& norm);
Json wspdCheckToJson(const WspdValidation& validation);

/// Serializes with a trailing newline; doubles use the shortest round-trip form.
std::string dumpLine(const Json& doc);

}  // namespace ccoll::io
