#pragma once

// Subcommand dispatch for the ccoll tool. Machine output (JSON lines) goes to `out`,
// diagnostics to `err`.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ccoll::cli {

enum class Subcommand { Build, Verify, Wspd, Solve, Covering };

enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,    // verification, WSPD check or oracle ratio check failed
    kExitInput = 2,     // input, parameter, schema or unsupported-feature error
    kExitResource = 3,  // work budget refused
    kExitInternal = 4,  // construction invariant violated or unexpected failure
};

struct RunConfig {
    Subcommand subcommand = Subcommand::Build;
    std::string input;
    std::string output;
    std::string collection;
    std::optional<double> epsilon;
    std::optional<std::string> norm;
    std::string builder = "linear";
    std::uint64_t seed = 42;
    std::size_t probes = 10000;
    int threads = 1;
    bool exact = false;   // verify: exact per-probe minima
    bool expand = false;  // build: list every candidate
    bool timing = false;  // include wall-clock fields in JSON output
    // wspd
    double separation = 10.0;
    bool check = false;
    // covering
    std::size_t dim = 2;
    double sigma = 0.5;
    // solve
    std::string problem = "kmedian";
    std::optional<std::size_t> k;
    std::size_t m = 0;
    std::vector<std::size_t> cards;
    std::string costs;
    std::string oracle;  // "" or "grid"
    double resolution = 1e-3;
};

/// CCOLL_THREADS when set to a positive integer, otherwise 1.
int defaultThreads();

/// Throws ParameterError for an inconsistent configuration.
void validate(const RunConfig& config);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ccoll::cli
