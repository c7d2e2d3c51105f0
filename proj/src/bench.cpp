#include "otoprv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "otoprv/cli.hpp"
#include "otoprv/svg.hpp"

namespace otoprv::bench {

namespace fs = std::filesystem;
using io::json;

BenchSpec spec_from_json(const json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) throw io::IoError("bench spec must be a JSON object");
    BenchSpec spec;
    const auto resolve = [&](const std::string& p) {
        fs::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };
    try {
        for (const auto& jc : doc.at("cases")) {
            BenchCase c;
            c.name = jc.at("name").get<std::string>();
            if (jc.contains("instances"))
                for (const auto& p : jc["instances"]) c.instances.push_back(resolve(p.get<std::string>()));
            if (jc.contains("generate")) {
                const auto& g = jc["generate"];
                GenerateOptions opt;
                opt.pois = g.at("pois").get<std::size_t>();
                opt.budget = g.value("budget", opt.budget);
                opt.beta = g.value("beta", opt.beta);
                opt.side = g.value("side", opt.side);
                opt.seed = g.value("seed", opt.seed);
                if (g.contains("weights"))
                    opt.weights = WeightDistribution::parse(g["weights"].get<std::string>());
                c.generate = opt;
                c.count = g.value("count", std::size_t{5});
            }
            spec.cases.push_back(std::move(c));
        }
        if (doc.contains("algorithms")) spec.algorithms = doc["algorithms"].get<std::vector<std::string>>();
        if (doc.contains("fleet_sizes")) spec.fleet_sizes = doc["fleet_sizes"].get<std::vector<int>>();
        if (doc.contains("budget")) spec.budget = doc["budget"].get<double>();
        if (doc.contains("beta")) spec.beta = doc["beta"].get<double>();
        if (doc.contains("seeds")) spec.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
        if (doc.contains("config")) spec.config = io::apply_config(spec.config, doc["config"]);
        if (doc.contains("out_dir")) spec.out_dir = resolve(doc["out_dir"].get<std::string>());
        else spec.out_dir = base_dir / "bench_out";
        spec.plots = doc.value("plots", true);
        spec.threads = doc.value("threads", 0u);
    } catch (const json::exception& e) {
        throw io::IoError(std::string("bench spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw io::IoError(std::string("bench spec: ") + e.what());
    }
    for (const auto& a : spec.algorithms)
        if (std::find(cli::kAlgorithms.begin(), cli::kAlgorithms.end(), a) == cli::kAlgorithms.end())
            throw cli::UsageError("bench spec: unknown algorithm '" + a + "'");
    return spec;
}

double improvement_pct(double value, double baseline) {
    return 100.0 * (value - baseline) / baseline;
}

namespace {

struct Unit {
    std::size_t case_index;
    std::size_t instance;
    int fleet_size;
    std::uint64_t seed;
    std::size_t first_cell;  // cells [first_cell, first_cell + algorithms) belong to the unit
};

std::string cell_stem(const BenchCell& c) {
    return "i" + std::to_string(c.instance) + "_nK" + std::to_string(c.fleet_size) + "_s" +
           std::to_string(c.seed) + "_" + c.algorithm;
}

}  // namespace

BenchReport run_bench(const BenchSpec& spec, std::ostream* log) {
    BenchReport report;
    report.algorithms = spec.algorithms;
    std::mutex log_mutex;
    const auto say = [&](const std::string& line) {
        if (!log) return;
        std::lock_guard lock(log_mutex);
        *log << line << std::endl;
    };

    // Materialize generated instances, then load everything once.
    std::vector<std::vector<std::optional<Instance>>> instances(spec.cases.size());
    for (std::size_t c = 0; c < spec.cases.size(); ++c) {
        const BenchCase& bc = spec.cases[c];
        std::vector<fs::path> paths = bc.instances;
        if (bc.generate) {
            for (std::size_t i = 0; i < bc.count; ++i) {
                GenerateOptions opt = *bc.generate;
                opt.seed = bc.generate->seed + i;
                const fs::path p = spec.out_dir / "instances" / (bc.name + "_" + std::to_string(i) + ".json");
                io::write_instance(p, generate_instance(opt));
                report.files.push_back(p);
                paths.push_back(p);
            }
        }
        for (const auto& p : paths) {
            try {
                instances[c].push_back(io::read_instance(p));
            } catch (const std::exception& e) {
                say("absent: " + p.string() + " (" + e.what() + ")");
                instances[c].push_back(std::nullopt);
            }
        }
    }

    std::vector<Unit> units;
    for (std::size_t c = 0; c < spec.cases.size(); ++c)
        for (std::size_t i = 0; i < instances[c].size(); ++i)
            for (int k : spec.fleet_sizes)
                for (std::uint64_t s : spec.seeds) {
                    units.push_back({c, i, k, s, report.cells.size()});
                    for (const auto& a : spec.algorithms) {
                        BenchCell cell;
                        cell.case_name = spec.cases[c].name;
                        cell.instance = i;
                        cell.algorithm = a;
                        cell.fleet_size = k;
                        cell.seed = s;
                        report.cells.push_back(cell);
                    }
                }

    const auto run_unit = [&](const Unit& u) {
        const auto& base = instances[u.case_index][u.instance];
        if (!base) return;
        const Instance inst = base->with_parameters(u.fleet_size, spec.budget.value_or(base->budget()),
                                                    spec.beta.value_or(base->beta()));
        SearchConfig config = spec.config;
        config.seed = u.seed;
        std::optional<cli::SolveOutput> seqop;
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
            BenchCell& cell = report.cells[u.first_cell + a];
            const std::string& alg = cell.algorithm;
            cli::SolveOutput out;
            try {
                if (alg == "alns" && seqop) {
                    // The ALNS start is the sequential-OP solution for the same seed.
                    const auto start = std::chrono::steady_clock::now();
                    SearchResult r = alns_solve(inst, config, seqop->solution);
                    out.solution = std::move(r.best);
                    out.trace = std::move(r.trace);
                    out.wall_time_s = seqop->wall_time_s +
                                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                } else {
                    out = cli::solve_with(inst, alg, config);
                }
            } catch (const std::exception& e) {
                say("absent: " + cell.case_name + " " + cell_stem(cell) + " (" + e.what() + ")");
                continue;
            }
            if (alg == "seqop") seqop = out;
            cell.present = true;
            cell.objective = out.solution.objective;
            cell.wall_time_s = out.wall_time_s;
            cell.solution_path = spec.out_dir / "solutions" / cell.case_name / (cell_stem(cell) + ".json");
            io::SolutionRecord rec{out.solution, alg, u.seed, out.wall_time_s, io::config_to_json(config)};
            io::write_solution(cell.solution_path, rec);
        }
        std::ostringstream line;
        line << spec.cases[u.case_index].name << " instance " << u.instance << " n_K=" << u.fleet_size
             << " seed=" << u.seed << " done";
        say(line.str());
    };

    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, units.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t u = next++; u < units.size(); u = next++) run_unit(units[u]);
        });
    for (auto& th : pool) th.join();
    for (const auto& cell : report.cells)
        if (cell.present) report.files.push_back(cell.solution_path);

    for (std::size_t c = 0; c < spec.cases.size(); ++c)
        for (int k : spec.fleet_sizes) {
            BenchRow row;
            row.case_name = spec.cases[c].name;
            row.fleet_size = k;
            const std::size_t na = spec.algorithms.size();
            std::vector<double> obj(na, 0.0), time(na, 0.0);
            row.samples.assign(na, 0);
            for (const auto& cell : report.cells) {
                if (!cell.present || cell.case_name != row.case_name || cell.fleet_size != k) continue;
                const auto a = static_cast<std::size_t>(
                    std::find(spec.algorithms.begin(), spec.algorithms.end(), cell.algorithm) -
                    spec.algorithms.begin());
                obj[a] += cell.objective;
                time[a] += cell.wall_time_s;
                ++row.samples[a];
            }
            for (std::size_t a = 0; a < na; ++a) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.mean_objective.push_back(row.samples[a] ? obj[a] / row.samples[a] : nan);
                row.mean_time_s.push_back(row.samples[a] ? time[a] / row.samples[a] : nan);
            }
            report.rows.push_back(std::move(row));
        }

    const fs::path csv = spec.out_dir / "bench.csv";
    io::write_text(csv, report_csv(report));
    report.files.push_back(csv);

    if (spec.plots) {
        for (std::size_t c = 0; c < spec.cases.size(); ++c) {
            std::vector<svg::Series> series;
            for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
                svg::Series s{spec.algorithms[a], {}, {}};
                for (const auto& row : report.rows)
                    if (row.case_name == spec.cases[c].name && !std::isnan(row.mean_objective[a])) {
                        s.x.push_back(row.fleet_size);
                        s.y.push_back(row.mean_objective[a]);
                    }
                series.push_back(std::move(s));
            }
            const fs::path plot = spec.out_dir / "plots" / (spec.cases[c].name + "_objective.svg");
            io::write_text(plot, svg::line_plot(spec.cases[c].name + ": mean objective", "n_K",
                                                "objective", series));
            report.files.push_back(plot);

            // Route map of the first present cell of the last listed algorithm.
            for (const auto& cell : report.cells) {
                if (!cell.present || cell.case_name != spec.cases[c].name || cell.instance != 0 ||
                    cell.algorithm != spec.algorithms.back())
                    continue;
                const auto& base = instances[c][0];
                const Instance inst = base->with_parameters(cell.fleet_size,
                                                            spec.budget.value_or(base->budget()),
                                                            spec.beta.value_or(base->beta()));
                const auto rec = io::read_solution(cell.solution_path);
                const fs::path map = spec.out_dir / "plots" / (spec.cases[c].name + "_" + cell_stem(cell) + ".svg");
                io::write_text(map, svg::route_map(inst, rec.solution,
                                                   spec.cases[c].name + " " + cell_stem(cell)));
                report.files.push_back(map);
                break;
            }
        }
    }
    return report;
}

std::string report_csv(const BenchReport& report) {
    const auto& algs = report.algorithms;
    const auto greedy = std::find(algs.begin(), algs.end(), "greedy");
    const bool has_greedy = greedy != algs.end();
    const auto g = static_cast<std::size_t>(greedy - algs.begin());
    std::ostringstream os;
    os << std::setprecision(10);
    os << "case,n_K";
    for (const auto& a : algs) {
        os << ',' << a << "_obj";
        if (has_greedy) os << ',' << a << "_increase_pct";
        os << ',' << a << "_time_s," << a << "_samples";
    }
    os << '\n';
    const auto num = [&](double v) {
        if (std::isnan(v)) os << "absent";
        else os << v;
    };
    for (const auto& row : report.rows) {
        os << row.case_name << ',' << row.fleet_size;
        for (std::size_t a = 0; a < algs.size(); ++a) {
            os << ',';
            num(row.mean_objective[a]);
            if (has_greedy) {
                os << ',';
                num(improvement_pct(row.mean_objective[a], row.mean_objective[g]));
            }
            os << ',';
            num(row.mean_time_s[a]);
            os << ',' << row.samples[a];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace otoprv::bench
