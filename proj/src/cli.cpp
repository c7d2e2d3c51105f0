#include "otoprv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "otoprv/bench.hpp"
#include "otoprv/construct.hpp"
#include "otoprv/generate.hpp"
#include "otoprv/graph.hpp"
#include "otoprv/io.hpp"

namespace otoprv::cli {

namespace fs = std::filesystem;

SolveOutput solve_with(const Instance& instance, const std::string& algorithm,
                       const SearchConfig& config, const ExactLimits& limits) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algorithm) == kAlgorithms.end())
        throw UsageError("unknown algorithm '" + algorithm + "'");
    SolveOutput out;
    const auto start = std::chrono::steady_clock::now();
    if (algorithm == "greedy") {
        out.solution = greedy_solve(instance, config.seed);
    } else if (algorithm == "seqop") {
        out.solution = sequential_op_solve(instance, config.seed, config.initial);
    } else if (algorithm == "alns") {
        SearchResult r = alns_solve(instance, config);
        out.solution = std::move(r.best);
        out.trace = std::move(r.trace);
    } else {
        out.solution = exact_solve(instance, limits);
    }
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

struct Overrides {
    std::optional<int> fleet;
    std::optional<double> budget;
    std::optional<double> beta;

    void add(CLI::App* cmd) {
        cmd->add_option("--fleet", fleet, "Fleet size n_K");
        cmd->add_option("--budget", budget, "Per-route budget");
        cmd->add_option("--beta", beta, "Reward exponent in (0,1]");
    }
    Instance apply(const Instance& inst) const {
        return inst.with_parameters(fleet.value_or(inst.fleet_size()), budget.value_or(inst.budget()),
                                    beta.value_or(inst.beta()));
    }
};

std::string summary(const std::string& algorithm, const Solution& s, double seconds) {
    std::ostringstream os;
    os << std::setprecision(10) << "algorithm=" << algorithm << " objective=" << s.objective
       << " visits=" << s.total_visits() << " routes=" << s.routes.size() << " time_s=" << seconds;
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"OTOP-RV solver: open team orienteering with repeatable visits", "otoprv"};
    app.require_subcommand(1);

    // generate
    GenerateOptions gen;
    std::string gen_weights = gen.weights.str();
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Random Euclidean instance");
    generate->add_option("-n,--pois", gen.pois, "Number of POIs")->required()->check(CLI::PositiveNumber);
    generate->add_option("--fleet", gen.fleet_size, "Fleet size n_K");
    generate->add_option("--budget", gen.budget, "Per-route budget");
    generate->add_option("--beta", gen.beta, "Reward exponent");
    generate->add_option("--side", gen.side, "Side of the coordinate square");
    generate->add_option("--weights", gen_weights, "uniform-int:LO:HI | uniform-real:LO:HI | constant:V");
    generate->add_option("--seed", gen.seed, "Generator seed");
    generate->add_option("--out", gen_out, "Instance file")->required();

    // solve
    std::string solve_instance, solve_algorithm = "alns", solve_config, solve_out, solve_trace;
    std::optional<std::uint64_t> solve_seed;
    Overrides solve_over;
    ExactLimits limits;
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    solve->add_option("instance", solve_instance, "Instance file")->required();
    solve->add_option("--algorithm", solve_algorithm, "greedy | seqop | alns | exact");
    solve->add_option("--config", solve_config, "JSON file overriding search parameters");
    solve->add_option("--seed", solve_seed, "Random seed");
    solve_over.add(solve);
    solve->add_option("--out", solve_out, "Solution file");
    solve->add_option("--trace", solve_trace, "Per-iteration ALNS trace (CSV)");
    solve->add_option("--max-pois", limits.max_pois, "Size guard of the exact solver");
    solve->add_flag("--force", limits.force, "Run the exact solver past its size guard");

    // validate
    std::string val_instance, val_solution;
    auto* validate = app.add_subcommand("validate", "Check a solution against an instance");
    validate->add_option("instance", val_instance, "Instance file")->required();
    validate->add_option("solution", val_solution, "Solution file")->required();

    // bench
    std::string bench_spec, bench_out;
    std::optional<unsigned> bench_threads;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark specification");
    bench_cmd->add_option("spec", bench_spec, "Benchmark spec file")->required();
    bench_cmd->add_option("--out", bench_out, "Output directory (overrides the spec)");
    bench_cmd->add_option("--threads", bench_threads, "Worker threads");

    // augment
    std::string aug_network, aug_arcs, aug_out;
    int aug_fleet = 1;
    double aug_budget = 30.0, aug_beta = 0.5;
    bool aug_remove = false;
    auto* augment = app.add_subcommand("augment", "Turn reward arcs of a road network into POIs");
    augment->add_option("network", aug_network, "Network file")->required();
    augment->add_option("arcs", aug_arcs, "Reward-arcs file")->required();
    augment->add_option("--fleet", aug_fleet, "Fleet size n_K");
    augment->add_option("--budget", aug_budget, "Per-route budget");
    augment->add_option("--beta", aug_beta, "Reward exponent");
    augment->add_flag("--remove-original", aug_remove, "Drop the original arc of every reward arc");
    augment->add_option("--out", aug_out, "Instance file")->required();

    // convert-dataset
    std::string conv_in, conv_out;
    int conv_fleet = 4;
    double conv_budget = 30.0, conv_beta = 0.5;
    auto* convert = app.add_subcommand("convert-dataset", "Import a tabular x y weight POI list");
    convert->add_option("input", conv_in, "Table file")->required();
    convert->add_option("--fleet", conv_fleet, "Fleet size n_K");
    convert->add_option("--budget", conv_budget, "Per-route budget");
    convert->add_option("--beta", conv_beta, "Reward exponent");
    convert->add_option("--out", conv_out, "Instance file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*generate) {
            try {
                gen.weights = WeightDistribution::parse(gen_weights);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            io::write_instance(gen_out, generate_instance(gen));
            out << "wrote " << gen_out << '\n';
        } else if (*solve) {
            const Instance inst = solve_over.apply(io::read_instance(solve_instance));
            SearchConfig config;
            if (!solve_config.empty()) {
                const io::json doc = io::read_json(solve_config);
                try {
                    config = io::apply_config(config, doc);
                } catch (const io::IoError& e) {
                    throw UsageError(e.what());
                }
            }
            if (solve_seed) config.seed = *solve_seed;
            try {
                config.validate();
            } catch (const ModelError& e) {
                throw UsageError(std::string("config: ") + e.what());
            }
            SolveOutput result;
            try {
                result = solve_with(inst, solve_algorithm, config, limits);
            } catch (const SizeGuardError& e) {
                throw UsageError(e.what());
            }
            if (!solve_out.empty())
                io::write_solution(solve_out, {result.solution, solve_algorithm, config.seed, result.wall_time_s,
                                               io::config_to_json(config)});
            if (!solve_trace.empty()) io::write_text(solve_trace, io::trace_csv(result.trace));
            out << summary(solve_algorithm, result.solution, result.wall_time_s) << '\n';
        } else if (*validate) {
            const Instance inst = io::read_instance(val_instance);
            const io::SolutionRecord rec = io::read_solution(val_solution);
            if (auto v = find_violation(inst, rec.solution, 1e-6)) {
                out << "FAIL " << *v << '\n';
                return kValidationFailure;
            }
            out << std::setprecision(10) << "PASS objective=" << rec.solution.objective << '\n';
        } else if (*bench_cmd) {
            const fs::path spec_path(bench_spec);
            bench::BenchSpec spec = bench::spec_from_json(io::read_json(spec_path), spec_path.parent_path());
            if (!bench_out.empty()) spec.out_dir = bench_out;
            if (bench_threads) spec.threads = *bench_threads;
            const bench::BenchReport report = bench::run_bench(spec, &err);
            out << bench::report_csv(report);
        } else if (*augment) {
            const io::NetworkFile net = io::network_from_json(io::read_json(aug_network));
            const auto arcs = io::reward_arcs_from_json(io::read_json(aug_arcs));
            AugmentedNetwork aug =
                augment_arcs(from_edge_list(net.nodes, net.edges), arcs,
                             aug_remove ? OriginalArcPolicy::Remove : OriginalArcPolicy::Keep, net.positions);
            aug.travel = metric_closure(aug.travel);
            io::write_instance(aug_out, make_instance(aug, aug_fleet, aug_budget, aug_beta));
            out << "wrote " << aug_out << " (" << aug.weights.size() << " nodes, " << arcs.size()
                << " reward arcs)\n";
        } else if (*convert) {
            std::ifstream in(conv_in);
            if (!in) throw io::IoError("cannot open " + conv_in);
            io::write_instance(conv_out, io::instance_from_table(in, conv_fleet, conv_budget, conv_beta));
            out << "wrote " << conv_out << '\n';
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const io::IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoError;
    } catch (const ModelError& e) {
        err << "invalid: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kOk;
}

}  // namespace otoprv::cli
