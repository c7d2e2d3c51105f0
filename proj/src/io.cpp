#include "otoprv/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace otoprv::io {

namespace {

constexpr const char* kInstanceFormat = "otoprv-instance";
constexpr const char* kSolutionFormat = "otoprv-solution";

json cost_to_json(double cost) {
    if (cost == kUnreachable) return "inf";
    return cost;
}

double cost_from_json(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "Infinity") return kUnreachable;
        throw IoError("unrecognized travel cost token '" + s + "'");
    }
    if (!v.is_number()) throw IoError("travel cost must be a number or \"inf\"");
    return v.get<double>();
}

template <typename T>
T field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key))
        throw IoError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw IoError(std::string("field '") + key + "': " + e.what());
    }
}

void expect_format(const json& doc, const char* format) {
    if (doc.is_object() && doc.contains("format") && doc["format"] != format)
        throw IoError(std::string("expected a ") + format + " document, found " +
                      doc["format"].dump());
}

}  // namespace

json instance_to_json(const Instance& instance) {
    json pois = json::array();
    for (const Poi& p : instance.pois()) {
        json row{{"id", p.id}, {"weight", p.weight}};
        if (p.position) {
            row["x"] = p.position->x;
            row["y"] = p.position->y;
        }
        pois.push_back(row);
    }
    json travel = json::array();
    const auto& m = instance.travel();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(cost_to_json(m(i, j)));
        travel.push_back(row);
    }
    return json{{"format", kInstanceFormat}, {"version", 1},
                {"fleet_size", instance.fleet_size()}, {"budget", instance.budget()},
                {"beta", instance.beta()}, {"pois", pois}, {"travel", travel}};
}

Instance instance_from_json(const json& doc) {
    expect_format(doc, kInstanceFormat);
    std::vector<Poi> pois;
    const auto& jp = doc.contains("pois") ? doc["pois"] : throw IoError("missing field 'pois'");
    if (!jp.is_array()) throw IoError("'pois' must be an array");
    for (const auto& row : jp) {
        Poi p;
        p.id = field<PoiId>(row, "id");
        p.weight = field<double>(row, "weight");
        if (row.contains("x") != row.contains("y"))
            throw IoError("POI " + std::to_string(p.id) + " has only one coordinate");
        if (row.contains("x")) p.position = Point{field<double>(row, "x"), field<double>(row, "y")};
        pois.push_back(p);
    }
    const auto& jt = doc.contains("travel") ? doc["travel"] : throw IoError("missing field 'travel'");
    if (!jt.is_array()) throw IoError("'travel' must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& r : jt) {
        if (!r.is_array()) throw IoError("'travel' rows must be arrays");
        std::vector<double> row;
        for (const auto& v : r) row.push_back(cost_from_json(v));
        rows.push_back(std::move(row));
    }
    return Instance(std::move(pois), TravelMatrix::from_rows(rows), field<int>(doc, "fleet_size"),
                    field<double>(doc, "budget"), field<double>(doc, "beta"));
}

json solution_to_json(const SolutionRecord& record) {
    json routes = json::array();
    for (const Route& r : record.solution.routes)
        routes.push_back(json{{"visits", r.visits}, {"cost", r.cost}});
    return json{{"format", kSolutionFormat},
                {"version", 1},
                {"algorithm", record.algorithm},
                {"seed", record.seed},
                {"objective", record.solution.objective},
                {"visit_counts", record.solution.visit_counts},
                {"routes", routes},
                {"wall_time_s", record.wall_time_s},
                {"config", record.config}};
}

SolutionRecord solution_from_json(const json& doc) {
    expect_format(doc, kSolutionFormat);
    SolutionRecord rec;
    rec.algorithm = doc.value("algorithm", std::string{});
    rec.seed = doc.value("seed", std::uint64_t{0});
    rec.wall_time_s = doc.value("wall_time_s", 0.0);
    if (doc.contains("config")) rec.config = doc["config"];
    rec.solution.objective = field<double>(doc, "objective");
    rec.solution.visit_counts = field<std::vector<int>>(doc, "visit_counts");
    const auto& jr = doc.contains("routes") ? doc["routes"] : throw IoError("missing field 'routes'");
    if (!jr.is_array()) throw IoError("'routes' must be an array");
    for (const auto& r : jr) {
        Route route;
        route.visits = field<std::vector<PoiId>>(r, "visits");
        route.cost = field<double>(r, "cost");
        rec.solution.routes.push_back(std::move(route));
    }
    return rec;
}

json config_to_json(const SearchConfig& c) {
    return json{{"removal_fraction", c.removal_fraction},
                {"worst_removal_exponent", c.worst_removal_exponent},
                {"scores", c.scores},
                {"reaction_factor", c.reaction_factor},
                {"segment_length", c.segment_length},
                {"cooling_rate", c.cooling_rate},
                {"min_temperature", c.min_temperature},
                {"start_temperature_factor", c.start_temperature_factor},
                {"max_iterations", c.max_iterations},
                {"max_non_improving", c.max_non_improving},
                {"regret_depth", c.regret_depth},
                {"regret_rule", c.regret_rule == RegretRule::Classic ? "classic" : "literal"},
                {"stall_rule", c.stall_rule == StallRule::Best ? "best" : "current"},
                {"initial_restarts", c.initial.restarts},
                {"candidate_count", c.initial.candidate_count},
                {"candidate_rule", c.initial.candidate_rule == CandidateRule::Nearest ? "nearest" : "desirability"},
                {"desirability_exponent", c.initial.desirability_exponent},
                {"validate_each_iteration", c.validate_each_iteration}};
}

SearchConfig apply_config(SearchConfig c, const json& overrides) {
    if (!overrides.is_object()) throw IoError("configuration must be a JSON object");
    for (const auto& [key, value] : overrides.items()) {
        try {
            if (key == "removal_fraction") c.removal_fraction = value.get<double>();
            else if (key == "worst_removal_exponent") c.worst_removal_exponent = value.get<double>();
            else if (key == "scores") c.scores = value.get<std::array<double, 4>>();
            else if (key == "reaction_factor") c.reaction_factor = value.get<double>();
            else if (key == "segment_length") c.segment_length = value.get<int>();
            else if (key == "cooling_rate") c.cooling_rate = value.get<double>();
            else if (key == "min_temperature") c.min_temperature = value.get<double>();
            else if (key == "start_temperature_factor") c.start_temperature_factor = value.get<double>();
            else if (key == "max_iterations") c.max_iterations = value.get<int>();
            else if (key == "max_non_improving") c.max_non_improving = value.get<int>();
            else if (key == "regret_depth") c.regret_depth = value.get<int>();
            else if (key == "stall_rule") {
                const auto rule = value.get<std::string>();
                if (rule == "best") c.stall_rule = StallRule::Best;
                else if (rule == "current") c.stall_rule = StallRule::Current;
                else throw IoError("stall_rule must be \"best\" or \"current\"");
            } else if (key == "regret_rule") {
                const auto rule = value.get<std::string>();
                if (rule == "classic") c.regret_rule = RegretRule::Classic;
                else if (rule == "literal") c.regret_rule = RegretRule::Literal;
                else throw IoError("regret_rule must be \"classic\" or \"literal\"");
            } else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "initial_restarts") c.initial.restarts = value.get<int>();
            else if (key == "candidate_count") c.initial.candidate_count = value.get<int>();
            else if (key == "candidate_rule") {
                const auto rule = value.get<std::string>();
                if (rule == "nearest") c.initial.candidate_rule = CandidateRule::Nearest;
                else if (rule == "desirability") c.initial.candidate_rule = CandidateRule::Desirability;
                else throw IoError("candidate_rule must be \"nearest\" or \"desirability\"");
            } else if (key == "desirability_exponent") c.initial.desirability_exponent = value.get<double>();
            else if (key == "validate_each_iteration") c.validate_each_iteration = value.get<bool>();
            else throw IoError("unknown configuration key '" + key + "'");
        } catch (const json::exception& e) {
            throw IoError("configuration key '" + key + "': " + e.what());
        }
    }
    return c;
}

NetworkFile network_from_json(const json& doc) {
    expect_format(doc, "otoprv-network");
    NetworkFile net;
    net.nodes = field<std::size_t>(doc, "nodes");
    net.positions.assign(net.nodes, std::nullopt);
    if (doc.contains("positions")) {
        const auto& jp = doc["positions"];
        if (!jp.is_array() || jp.size() != net.nodes)
            throw IoError("'positions' must list one [x, y] pair (or null) per node");
        for (std::size_t i = 0; i < net.nodes; ++i) {
            if (jp[i].is_null()) continue;
            const auto xy = jp[i].get<std::vector<double>>();
            if (xy.size() != 2) throw IoError("position of node " + std::to_string(i) + " is not [x, y]");
            net.positions[i] = Point{xy[0], xy[1]};
        }
    }
    const auto& je = doc.contains("edges") ? doc["edges"] : throw IoError("missing field 'edges'");
    for (const auto& e : je)
        net.edges.push_back(Edge{field<PoiId>(e, "from"), field<PoiId>(e, "to"),
                                 field<double>(e, "cost"), e.value("directed", false)});
    return net;
}

std::vector<RewardArc> reward_arcs_from_json(const json& doc) {
    const json& arcs = doc.is_array() ? doc : (doc.contains("arcs") ? doc["arcs"] : throw IoError("missing field 'arcs'"));
    std::vector<RewardArc> out;
    for (const auto& a : arcs)
        out.push_back(RewardArc{field<PoiId>(a, "from"), field<PoiId>(a, "to"), field<double>(a, "weight")});
    return out;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const json& doc) {
    write_text(path, doc.dump(2) + "\n");
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json(path)); }

void write_instance(const std::filesystem::path& path, const Instance& instance) {
    write_json(path, instance_to_json(instance));
}

SolutionRecord read_solution(const std::filesystem::path& path) {
    return solution_from_json(read_json(path));
}

void write_solution(const std::filesystem::path& path, const SolutionRecord& record) {
    write_json(path, solution_to_json(record));
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "iteration,destroy,repair,candidate_objective,accepted,best_objective,temperature\n";
    for (const auto& r : trace)
        os << r.iteration << ',' << to_string(r.destroy) << ',' << to_string(r.repair) << ','
           << r.candidate_objective << ',' << (r.accepted ? 1 : 0) << ',' << r.best_objective
           << ',' << r.temperature << '\n';
    return os.str();
}

Instance instance_from_table(std::istream& in, int fleet_size, double budget, double beta) {
    std::vector<Point> points;
    std::vector<double> weights;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ls(line);
        std::vector<double> cols;
        std::string tok;
        bool numeric = true;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                cols.push_back(std::stod(tok, &used));
                if (used != tok.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (cols.empty() && numeric) continue;
        if (!numeric) {
            if (points.empty()) continue;  // header
            throw IoError("line " + std::to_string(line_no) + ": non-numeric field");
        }
        if (cols.size() == 4) cols.erase(cols.begin());
        if (cols.size() != 3)
            throw IoError("line " + std::to_string(line_no) + ": expected x y weight (optionally id first)");
        points.push_back(Point{cols[0], cols[1]});
        weights.push_back(cols[2]);
    }
    if (points.empty()) throw IoError("no POI rows found");
    std::vector<Poi> pois;
    for (std::size_t i = 0; i < points.size(); ++i)
        pois.push_back(Poi{static_cast<PoiId>(i), weights[i], points[i]});
    return Instance(std::move(pois), euclidean_matrix(points), fleet_size, budget, beta);
}

}  // namespace otoprv::io
