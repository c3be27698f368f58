#include "ccoll/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <string_view>

#include "ccoll/collection.hpp"
#include "ccoll/covering.hpp"
#include "ccoll/error.hpp"
#include "ccoll/io.hpp"
#include "ccoll/solve.hpp"
#include "ccoll/verify.hpp"
#include "ccoll/wspd.hpp"

namespace ccoll::cli {

namespace {

PointSet loadPoints(const RunConfig& config) {
    if (config.input.empty()) throw ParameterError("--input is required");
    return io::parsePoints(io::readFile(config.input));
}

NormSpec normOr(const RunConfig& config, std::string_view fallback) {
    return NormSpec::parse(config.norm ? *config.norm : std::string(fallback));
}

BuilderKind parseBuilderTag(const std::string& tag) {
    const auto builder = parseBuilder(tag);
    if (!builder) throw ParameterError("unknown builder '" + tag + "' (expected linear or quadratic)");
    return *builder;
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write file '" + path + "'");
    f << text;
    if (!f) throw InputError("failed writing file '" + path + "'");
}

int runBuild(const RunConfig& config, std::ostream& out) {
    const PointSet x = loadPoints(config);
    const NormSpec norm = normOr(config, "l2");
    const CentersCollection c =
        buildCollection(parseBuilderTag(config.builder), x, *config.epsilon, norm, BuildOptions{config.threads});
    const io::CollectionWriteOptions options{config.expand, config.timing};
    if (config.output.empty()) {
        out << io::emitCollection(c, options);
    } else {
        writeFile(config.output, io::emitCollection(c, options));
        out << io::dumpLine(io::collectionHeader(c, config.timing));
    }
    return kExitOk;
}

CentersCollection loadCollectionFor(const std::string& path, const PointSet& x) {
    CentersCollection c = io::loadCollection(io::readFile(path));
    if (c.dim() != x.dim()) {
        throw InputError("collection has d=" + std::to_string(c.dim()) + " but the input has d=" +
                         std::to_string(x.dim()));
    }
    return c;
}

int runVerify(const RunConfig& config, std::ostream& out) {
    if (config.collection.empty()) throw ParameterError("--collection is required");
    const PointSet x = loadPoints(config);
    const CentersCollection c = loadCollectionFor(config.collection, x);
    const NormSpec norm = normOr(config, c.info().norm);
    if (config.norm && norm.tag() != c.info().norm) {
        throw InputError("--norm " + norm.tag() + " differs from the collection's norm " + c.info().norm);
    }
    const double epsilon = config.epsilon ? *config.epsilon : c.info().epsilon;
    ProbeOptions options;
    options.threads = config.threads;
    options.exact = config.exact;
    const ProbeReport report = probeVerify(x, c, epsilon, norm, config.probes, config.seed, options);
    out << io::dumpLine(io::probeReportToJson(report, config.seed));
    return report.pass ? kExitOk : kExitFailed;
}

int runWspd(const RunConfig& config, std::ostream& out) {
    const PointSet x = loadPoints(config);
    const NormSpec norm = normOr(config, "l2");
    const SplitTree tree = buildSplitTree(x);
    const WspdSet wspd = extractWspd(tree, config.separation, norm);
    io::Json doc = io::wspdToJson(wspd, tree, x.size(), norm);
    int code = kExitOk;
    if (config.check) {
        const WspdValidation v = validateWspd(wspd, tree, x, config.separation, norm);
        doc["check"] = io::wspdCheckToJson(v);
        if (!v.ok()) code = kExitFailed;
    }
    out << io::dumpLine(doc);
    return code;
}

int runCovering(const RunConfig& config, std::ostream& out) {
    const NormSpec norm = normOr(config, "l2");
    out << io::dumpLine(io::templateToJson(coveringFor(norm, config.dim, config.sigma)));
    return kExitOk;
}

ObjectiveSpec objectiveFor(const RunConfig& config, std::size_t n) {
    const auto kind = parseObjective(config.problem);
    if (!kind) throw ParameterError("unknown problem '" + config.problem + "'");
    ObjectiveSpec spec;
    spec.kind = *kind;
    if (*kind == ObjectiveKind::Problem2) {
        if (config.cards.empty()) throw ParameterError("p2 needs --cards");
        if (config.k && *config.k != config.cards.size()) {
            throw ParameterError("--k " + std::to_string(*config.k) + " disagrees with " +
                                 std::to_string(config.cards.size()) + " cardinalities");
        }
        spec = ObjectiveSpec::problem2(config.cards);
    } else {
        if (!config.cards.empty()) throw ParameterError("--cards applies only to p2");
        spec.k = config.k.value_or(1);
        spec.m = config.m;
    }
    if (!config.costs.empty()) {
        if (spec.kind != ObjectiveKind::Problem1 && spec.kind != ObjectiveKind::Problem2) {
            throw ParameterError("--costs applies only to p1 and p2");
        }
        io::CostTables tables = io::parseCosts(io::readFile(config.costs), spec.k, n);
        spec.unitCosts = std::move(tables.unitCosts);
        spec.exponents = std::move(tables.exponents);
    }
    spec.validate(n);
    return spec;
}

int runSolve(const RunConfig& config, std::ostream& out) {
    const PointSet x = loadPoints(config);
    const ObjectiveSpec objective = objectiveFor(config, x.totalMultiplicity());
    CentersCollection c = config.collection.empty()
                              ? buildCollection(parseBuilderTag(config.builder), x, *config.epsilon,
                                                normOr(config, "l2"), BuildOptions{config.threads})
                              : loadCollectionFor(config.collection, x);
    const NormSpec norm = normOr(config, c.info().norm);
    const SolveResult result = solveDiscrete(x, c, objective, norm, SolveOptions{config.threads});
    out << io::dumpLine(io::solveResultToJson(result, objective, config.timing));
    if (config.oracle.empty()) return kExitOk;
    const SolveResult oracle = gridBruteOracle(x, objective, config.resolution, norm);
    const double bound = result.guaranteedRatio.value_or(std::numeric_limits<double>::infinity());
    const bool within = withinBound(result.value, bound * (oracle.value + oracle.slack));
    io::Json line;
    line["oracle"] = config.oracle;
    line["resolution"] = config.resolution;
    line["oracle_value"] = oracle.value;
    line["oracle_slack"] = oracle.slack;
    line["oracle_centers"] = io::Json::array();
    for (std::size_t i = 0; i < oracle.centers.size(); ++i) {
        line["oracle_centers"].push_back(std::vector<double>(oracle.centers[i].begin(), oracle.centers[i].end()));
    }
    line["ratio"] = oracle.value > 0.0 ? io::Json(result.value / oracle.value) : io::Json(nullptr);
    line["bound"] = result.guaranteedRatio ? io::Json(bound) : io::Json(nullptr);
    line["within_bound"] = within;
    out << io::dumpLine(line);
    return within ? kExitOk : kExitFailed;
}

}  // namespace

int defaultThreads() {
    const char* env = std::getenv("CCOLL_THREADS");
    if (env == nullptr) return 1;
    const std::string_view s(env);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 1) return 1;
    return value;
}

void validate(const RunConfig& config) {
    if (config.threads < 1) throw ParameterError("--threads must be at least 1");
    if (config.epsilon && !(*config.epsilon > 0.0 && std::isfinite(*config.epsilon))) {
        throw ParameterError("--epsilon must be positive");
    }
    switch (config.subcommand) {
        case Subcommand::Build:
            if (!config.epsilon) throw ParameterError("--epsilon is required");
            break;
        case Subcommand::Verify:
            if (config.probes < 1) throw ParameterError("--probes must be at least 1");
            break;
        case Subcommand::Wspd:
            if (!(config.separation >= 1.0)) throw ParameterError("--t must be at least 1");
            break;
        case Subcommand::Covering:
            if (config.dim < 1) throw ParameterError("--d must be at least 1");
            break;
        case Subcommand::Solve:
            if (config.collection.empty() && !config.epsilon) {
                throw ParameterError("--epsilon is required unless --collection is given");
            }
            if (!config.oracle.empty() && config.oracle != "grid") {
                throw ParameterError("unknown oracle '" + config.oracle + "' (expected grid)");
            }
            if (!(config.resolution > 0.0)) throw ParameterError("--resolution must be positive");
            break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        switch (config.subcommand) {
            case Subcommand::Build: return runBuild(config, out);
            case Subcommand::Verify: return runVerify(config, out);
            case Subcommand::Wspd: return runWspd(config, out);
            case Subcommand::Solve: return runSolve(config, out);
            case Subcommand::Covering: return runCovering(config, out);
        }
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Build ? kExitInternal : kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace ccoll::cli
