#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "olo/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitViolation = 2;
constexpr int kExitPrecondition = 3;

struct RunOptions
{
    std::string algo = "coin1d";
    std::string adversary = "rademacher";
    std::string space = "euclidean";
    long long dim = 1;
    long long T = 1000;
    std::uint64_t seed = 0;
    double eps = 1.0;
    double lipschitz = 1.0;
    std::string out;
    std::string format = "csv";
};

struct CheckOptions
{
    std::string trace;
    std::string theorem = "thm8";
    std::string comparators;
};

olo::ExperimentConfig make_config(const RunOptions& o)
{
    olo::ExperimentConfig config;
    config.adversary = olo::AdversarySpec::parse(o.adversary);
    config.space = olo::parse_space(o.space, o.dim);
    config.T = o.T;
    config.seed = o.seed;
    config.eps = o.eps;
    config.lipschitz = o.lipschitz;
    config.algo_recipe = olo::resolve_recipe(o.algo, config.context());
    return config;
}

int do_run(const RunOptions& o)
{
    const auto config = make_config(o);
    const auto trace = olo::run(config);
    const auto format = olo::parse_trace_format(o.format);
    if (o.out.empty()) {
        if (format == olo::TraceFormat::csv)
            olo::write_csv(std::cout, trace);
        else
            olo::write_json(std::cout, trace);
    } else {
        olo::write_trace(o.out, trace, format);
    }
    return kExitOk;
}

int do_check(const CheckOptions& o)
{
    const auto trace = olo::read_trace(o.trace);
    std::string comparators = o.comparators;
    if (comparators.empty())
        comparators = trace.dim() == 1 ? "grid" : "ball";
    const auto report = olo::check_bounds(trace, o.theorem, comparators);
    std::cout << report.dump(2) << '\n';
    return report.at("ok").get<bool>() ? kExitOk : kExitViolation;
}

struct BenchCase
{
    std::string name;
    RunOptions options;
    std::string theorem;
    std::string comparators;
};

std::vector<BenchCase> default_suite()
{
    const auto make = [](std::string algo, std::string adversary, std::string space, long long dim, long long T,
                         double lipschitz) {
        RunOptions o;
        o.algo = std::move(algo);
        o.adversary = std::move(adversary);
        o.space = std::move(space);
        o.dim = dim;
        o.T = T;
        o.seed = 42;
        o.lipschitz = lipschitz;
        return o;
    };
    return {
        {"coin1d/rademacher", make("coin1d", "rademacher", "euclidean", 1, 10000, 1.0), "thm8", "grid"},
        {"coin1d/biased", make("coin1d", "rademacher:bias=0.3", "euclidean", 1, 10000, 1.0), "wealth", ""},
        {"coin/rademacher d=5", make("coin", "rademacher", "euclidean", 5, 5000, 1.0), "thm8", "ball"},
        {"coin/p1.5 drifting d=5", make("coin", "drifting:period=500", "p:1.5", 5, 2000, 1.0), "thm8", "ball"},
        {"dimfree/rademacher d=10", make("dimfree", "rademacher:bias=0.02", "euclidean", 10, 10000, 1.0), "", ""},
        {"constrained-ball/drifting d=5", make("constrained-ball", "drifting", "euclidean", 5, 5000, 1.0),
         "factor2", ""},
        {"multiscale/adversarial N=3",
         make("multiscale", "multiscale_adversarial:c=1,10,100", "euclidean", 3, 10000, 1.0), "factor2", ""},
        {"curvature/sc_quadratic d=2", make("curvature", "sc_quadratic:mu=1", "euclidean", 2, 4096, 1.5), "", ""},
        {"ogd/rademacher d=10", make("ogd", "rademacher:bias=0.2", "euclidean", 10, 10000, 1.0), "", ""},
    };
}

olo::ComparatorFamily family_for(const std::string& adversary, const olo::RunTrace& trace)
{
    const auto spec = olo::AdversarySpec::parse(adversary);
    if (spec.name == "sc_quadratic")
        return olo::ComparatorFamily::sc_quadratic_closed_form();
    if (spec.name == "multiscale_adversarial")
        return olo::ComparatorFamily::simplex_vertices();
    if (trace.dim() == 1)
        return olo::ComparatorFamily::grid_1d(-10.0, 10.0, 0.1);
    return olo::ComparatorFamily::unit_ball_linear(1.0);
}

int do_bench(const std::string& suite)
{
    if (suite != "default")
        throw olo::ArgumentError("unknown bench suite '" + suite + "'");
    bool all_ok = true;
    std::printf("%-32s %8s %14s %-8s %-6s %9s\n", "experiment", "T", "regret", "check", "ok", "seconds");
    for (const auto& bench : default_suite()) {
        const auto start = std::chrono::steady_clock::now();
        const auto trace = olo::run(make_config(bench.options));
        const auto best = olo::hindsight_comparator(trace, family_for(bench.options.adversary, trace));
        std::string verdict = "-";
        if (!bench.theorem.empty()) {
            const bool ok = olo::check_bounds(trace, bench.theorem, bench.comparators).at("ok").get<bool>();
            verdict = ok ? "yes" : "NO";
            all_ok = all_ok && ok;
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%-32s %8lld %14.6g %-8s %-6s %9.3f\n", bench.name.c_str(), bench.options.T, best.regret,
                    bench.theorem.empty() ? "-" : bench.theorem.c_str(), verdict.c_str(), seconds);
    }
    return all_ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parameter-free online learning: runs, bound checks and benchmarks"};
    app.require_subcommand(1);

    RunOptions run_options;
    auto* run = app.add_subcommand("run", "Play a learner against an adversary and write the trace");
    run->add_option("--algo", run_options.algo, "Preset name, recipe JSON file, or inline JSON")
        ->capture_default_str();
    run->add_option("--adversary", run_options.adversary, "name[:key=value...]")->capture_default_str();
    run->add_option("--space", run_options.space, "euclidean | l1 | p:<p> | winf:<c1,...>")->capture_default_str();
    run->add_option("--dim", run_options.dim, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--T", run_options.T, "Rounds")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--seed", run_options.seed, "Seed")->capture_default_str();
    run->add_option("--eps", run_options.eps, "Initial wealth")->capture_default_str();
    run->add_option("--lipschitz", run_options.lipschitz, "Gradient scale L")->capture_default_str();
    run->add_option("--out", run_options.out, "Output path (stdout when omitted)");
    run->add_option("--format", run_options.format, "csv | json")->capture_default_str();

    CheckOptions check_options;
    auto* check = app.add_subcommand("check", "Evaluate a theorem inequality on a trace");
    check->add_option("--trace", check_options.trace, "Trace file")->required();
    check->add_option("--theorem", check_options.theorem, "thm8 | logloss | factor2 | wealth")
        ->capture_default_str();
    check->add_option("--comparators", check_options.comparators, "grid | ball | vertices");

    std::string suite = "default";
    auto* bench = app.add_subcommand("bench", "Run a benchmark suite and print a summary table");
    bench->add_option("--suite", suite, "Suite name")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return do_run(run_options);
        if (*check)
            return do_check(check_options);
        if (*bench)
            return do_bench(suite);
    } catch (const olo::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
