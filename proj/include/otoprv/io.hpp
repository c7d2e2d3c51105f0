#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "otoprv/alns.hpp"
#include "otoprv/graph.hpp"
#include "otoprv/model.hpp"

namespace otoprv::io {

using nlohmann::json;

/// File missing, unreadable, unparsable or structurally wrong.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& doc);

struct SolutionRecord {
    Solution solution;
    std::string algorithm;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    json config = json::object();
};

json solution_to_json(const SolutionRecord& record);
/// Parses routes and declared fields verbatim; no feasibility checks.
SolutionRecord solution_from_json(const json& doc);

json config_to_json(const SearchConfig& config);
/// Overrides the fields present in `overrides`; unknown keys throw IoError.
SearchConfig apply_config(SearchConfig config, const json& overrides);

struct NetworkFile {
    std::size_t nodes = 0;
    std::vector<Edge> edges;
    std::vector<std::optional<Point>> positions;
};

NetworkFile network_from_json(const json& doc);
std::vector<RewardArc> reward_arcs_from_json(const json& doc);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);
SolutionRecord read_solution(const std::filesystem::path& path);
void write_solution(const std::filesystem::path& path, const SolutionRecord& record);

/// One row per iteration: iteration, destroy, repair, candidate, accepted, best, temperature.
std::string trace_csv(const std::vector<TraceRow>& trace);

/// Tabular POI list (x y weight, optional leading id column; comma, tab or space
/// separated; '#' comments and a non-numeric header line are skipped) as an instance
/// with Euclidean travel costs.
Instance instance_from_table(std::istream& in, int fleet_size, double budget, double beta);

}  // namespace otoprv::io
