#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "otoprv/alns.hpp"
#include "otoprv/generate.hpp"
#include "otoprv/io.hpp"

namespace otoprv::bench {

struct BenchCase {
    std::string name;
    std::vector<std::filesystem::path> instances;
    // When set, `count` instances are generated into <out_dir>/instances/ first.
    std::optional<GenerateOptions> generate;
    std::size_t count = 0;
};

struct BenchSpec {
    std::vector<BenchCase> cases;
    std::vector<std::string> algorithms{"greedy", "seqop", "alns"};
    std::vector<int> fleet_sizes{4, 6, 8, 10, 12};
    std::optional<double> budget;
    std::optional<double> beta;
    std::vector<std::uint64_t> seeds{1};
    SearchConfig config;
    std::filesystem::path out_dir = "bench_out";
    bool plots = true;
    // Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Relative paths inside the spec resolve against `base_dir`.
BenchSpec spec_from_json(const io::json& doc, const std::filesystem::path& base_dir);

struct BenchCell {
    std::string case_name;
    std::size_t instance = 0;
    std::string algorithm;
    int fleet_size = 0;
    std::uint64_t seed = 0;
    bool present = false;
    double objective = 0.0;
    double wall_time_s = 0.0;
    std::filesystem::path solution_path;
};

struct BenchRow {
    std::string case_name;
    int fleet_size = 0;
    // Indexed like BenchSpec::algorithms; NaN when no cell was present.
    std::vector<double> mean_objective;
    std::vector<double> mean_time_s;
    std::vector<std::size_t> samples;
};

struct BenchReport {
    std::vector<std::string> algorithms;
    std::vector<BenchCell> cells;
    std::vector<BenchRow> rows;
    std::vector<std::filesystem::path> files;
};

/// Percent improvement of `value` over `baseline`.
double improvement_pct(double value, double baseline);

/// Solves every (case, instance, fleet size, seed, algorithm) cell, stores one solution
/// file per cell and aggregates per (case, fleet size) means.
BenchReport run_bench(const BenchSpec& spec, std::ostream* log = nullptr);

/// Table with mean objective, increase over greedy (when greedy is benchmarked) and mean
/// wall time per algorithm.
std::string report_csv(const BenchReport& report);

}  // namespace otoprv::bench
