#include <iostream>

#include <CLI11.hpp>

#include "ccoll/cli.hpp"

int main(int argc, char** argv) {
    using ccoll::cli::RunConfig;
    using ccoll::cli::Subcommand;

    CLI::App app{"Approximate centers collections: build, verify, decompose, solve"};
    app.require_subcommand(1);
    RunConfig config;
    config.threads = ccoll::cli::defaultThreads();

    double epsilon = 0.0;
    std::string norm;
    auto addEpsilon = [&](CLI::App* sub, const char* help) {
        return sub->add_option("--epsilon", epsilon, help)->check(CLI::PositiveNumber);
    };
    auto addNorm = [&](CLI::App* sub) {
        return sub->add_option("--norm", norm, "Norm: l1, l2, linf or lp:<p>");
    };
    auto addThreads = [&](CLI::App* sub) {
        sub->add_option("--threads", config.threads, "Worker threads (default: CCOLL_THREADS or 1)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* build = app.add_subcommand("build", "Build a (1+eps)-approximate centers collection");
    build->add_option("--input", config.input, "Point CSV")->required();
    CLI::Option* buildEps = addEpsilon(build, "Approximation parameter")->required();
    CLI::Option* buildNorm = addNorm(build);
    build->add_option("--builder", config.builder, "linear or quadratic");
    build->add_option("--output", config.output, "Collection file (default: standard output)");
    build->add_flag("--expand", config.expand, "List every candidate instead of template + blocks");
    build->add_flag("--timing", config.timing, "Include build_ms");
    addThreads(build);

    CLI::App* verify = app.add_subcommand("verify", "Probe-verify a collection");
    verify->add_option("--input", config.input, "Point CSV")->required();
    verify->add_option("--collection", config.collection, "Collection file")->required();
    CLI::Option* verifyEps = addEpsilon(verify, "Target epsilon (default: the collection's)");
    CLI::Option* verifyNorm = addNorm(verify);
    verify->add_option("--probes", config.probes, "Probe count")->check(CLI::PositiveNumber);
    verify->add_option("--seed", config.seed, "Random seed");
    verify->add_flag("--exact", config.exact, "Minimize every probe's factor exactly");
    addThreads(verify);

    CLI::App* wspd = app.add_subcommand("wspd", "Well-separated pair decomposition");
    wspd->add_option("--input", config.input, "Point CSV")->required();
    wspd->add_option("--t", config.separation, "Separation t >= 1");
    CLI::Option* wspdNorm = addNorm(wspd);
    wspd->add_flag("--check", config.check, "Validate all WSPD properties; exit 1 on failure");

    CLI::App* solve = app.add_subcommand("solve", "Discrete center-based solve over a collection");
    solve->add_option("--input", config.input, "Point CSV")->required();
    solve->add_option("--problem", config.problem, "kcenter, kmedian, kmeans, mvariance, p1 or p2");
    CLI::Option* kOption = solve->add_option("--k", "Number of centers")->check(CLI::PositiveNumber);
    solve->add_option("--m", config.m, "Points kept (mvariance, p1)");
    solve->add_option("--cards", config.cards, "Cardinalities m_1,...,m_k (p2)")->delimiter(',');
    solve->add_option("--costs", config.costs, "Cost CSV: k rows of f_ij, optionally k rows of g_ij");
    CLI::Option* solveEps = addEpsilon(solve, "Build epsilon when no --collection is given");
    CLI::Option* solveNorm = addNorm(solve);
    solve->add_option("--builder", config.builder, "linear or quadratic");
    solve->add_option("--collection", config.collection, "Use an existing collection file");
    solve->add_option("--oracle", config.oracle, "Continuous oracle: grid");
    solve->add_option("--resolution", config.resolution, "Oracle grid resolution");
    solve->add_flag("--timing", config.timing, "Include wall_ms");
    addThreads(solve);

    CLI::App* covering = app.add_subcommand("covering", "Dump a covering template");
    covering->add_option("--d", config.dim, "Dimension")->check(CLI::PositiveNumber);
    covering->add_option("--sigma", config.sigma, "Covering radius in (0,1)");
    CLI::Option* coveringNorm = addNorm(covering);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ccoll::cli::kExitInput;
    }

    for (CLI::Option* opt : {buildEps, verifyEps, solveEps}) {
        if (opt->count() > 0) config.epsilon = epsilon;
    }
    for (CLI::Option* opt : {buildNorm, verifyNorm, wspdNorm, solveNorm, coveringNorm}) {
        if (opt->count() > 0) config.norm = norm;
    }
    if (kOption->count() > 0) config.k = kOption->as<std::size_t>();

    if (build->parsed()) config.subcommand = Subcommand::Build;
    if (verify->parsed()) config.subcommand = Subcommand::Verify;
    if (wspd->parsed()) config.subcommand = Subcommand::Wspd;
    if (solve->parsed()) config.subcommand = Subcommand::Solve;
    if (covering->parsed()) config.subcommand = Subcommand::Covering;
    return ccoll::cli::run(config, std::cout, std::cerr);
}
