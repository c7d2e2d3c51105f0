#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "otoprv/construct.hpp"
#include "otoprv/model.hpp"
#include "otoprv/random.hpp"

namespace otoprv {

enum class DestroyOperator { Random, Worst, Related, Route };
enum class RepairOperator { Greedy, Regret };
enum class OperatorFamily { Destroy, Repair };
enum class Outcome { NewBest, Improving, AcceptedWorse, Rejected };

inline constexpr std::array kDestroyOperators{DestroyOperator::Random, DestroyOperator::Worst,
                                              DestroyOperator::Related, DestroyOperator::Route};
inline constexpr std::array kRepairOperators{RepairOperator::Greedy, RepairOperator::Regret};

const char* to_string(DestroyOperator op);
const char* to_string(RepairOperator op);
const char* to_string(Outcome outcome);

/// How the k-regret value is aggregated from the descending per-route insertion values.
enum class RegretRule {
    Classic,  // sum_{j=2..k} (v_1 - v_j), maximized
    Literal,  // sum_{j=1..k} (v_j - v_1), maximized
};

// Which improvement resets the non-improving counter: a new best, or any candidate that
// beats the current solution.
enum class StallRule { Best, Current };

struct SearchConfig {
    double removal_fraction = 0.4;
    double worst_removal_exponent = 3.0;
    // Score increments for new-best, improving, accepted-worse and rejected outcomes.
    std::array<double, 4> scores{20.0, 10.0, 3.0, 0.0};
    double reaction_factor = 0.7;
    int segment_length = 100;
    double cooling_rate = 0.95;
    double min_temperature = 0.1;
    // T_max = start_temperature_factor * f(s0) / ln 2.
    double start_temperature_factor = 0.05;
    int max_iterations = 2000;
    int max_non_improving = 200;
    StallRule stall_rule = StallRule::Best;
    int regret_depth = 2;
    RegretRule regret_rule = RegretRule::Classic;
    std::uint64_t seed = 1;
    OpSolverConfig initial;
    // Full validation of every candidate; throws std::logic_error on a violation.
    bool validate_each_iteration = false;

    /// Throws ModelError when a field is outside its admissible range.
    void validate() const;
};

struct OperatorStats {
    double weight = 1.0;
    double score = 0.0;
    int uses = 0;
};

/// Roulette-wheel statistics for the destroy and repair families.
class OperatorBank {
public:
    OperatorBank();
    OperatorBank(std::vector<double> destroy_weights, std::vector<double> repair_weights);

    std::span<const OperatorStats> stats(OperatorFamily family) const;
    std::vector<double> probabilities(OperatorFamily family) const;

    /// Index drawn with probability weight / sum(weights).
    std::size_t select(OperatorFamily family, Rng& rng) const;

    /// Credits both operators used in an iteration with the score of its outcome.
    void update_scores(std::size_t destroy, std::size_t repair, Outcome outcome,
                       const std::array<double, 4>& scores);

    /// weight <- weight (1 - reaction) + reaction * score / uses for every operator used
    /// in the segment; unused operators keep their weight. Scores and uses reset.
    void end_segment(double reaction);

private:
    std::vector<OperatorStats>& family(OperatorFamily f) {
        return f == OperatorFamily::Destroy ? destroy_ : repair_;
    }
    const std::vector<OperatorStats>& family(OperatorFamily f) const {
        return f == OperatorFamily::Destroy ? destroy_ : repair_;
    }

    std::vector<OperatorStats> destroy_;
    std::vector<OperatorStats> repair_;
};

struct RemovedVisit {
    std::size_t route = 0;
    PoiId poi = 0;
    bool operator==(const RemovedVisit&) const = default;
};

/// round(count * fraction), halves away from zero.
std::size_t removal_count(std::size_t count, double fraction);

/// Ranking key of a visit for worst removal: reward lost per unit of cost saved, with
/// zero-reward visits at 0 and non-positive savings ranked last (+inf).
double removal_value(const RemovalDelta& delta);

/// Position floor(y^p * size) in the ascending value list.
std::size_t worst_removal_index(double y, double exponent, std::size_t size);

/// Symmetrized travel cost min(t_ab, t_ba) used as closeness by related removal.
double closeness(const Instance& instance, PoiId a, PoiId b);

// Destroy operators edit `solution` in place and report what they removed.
std::vector<RemovedVisit> destroy_random(const Instance& instance, Solution& solution,
                                         double fraction, Rng& rng);
std::vector<RemovedVisit> destroy_worst(const Instance& instance, Solution& solution,
                                        double fraction, double exponent, Rng& rng);
std::vector<RemovedVisit> destroy_related(const Instance& instance, Solution& solution,
                                          double fraction, Rng& rng);
std::vector<RemovedVisit> destroy_related_around(const Instance& instance, Solution& solution,
                                                 double fraction, PoiId center);
std::vector<RemovedVisit> destroy_route(const Instance& instance, Solution& solution,
                                        double fraction, Rng& rng);

struct InsertionOption {
    double delta_cost = kUnreachable;
    std::size_t position = 0;
    bool feasible = false;
};

/// Minimum-cost position of `poi` in `route` (lowest position on ties). Infeasible when
/// the route already holds the POI, a leg is missing or the budget would break.
InsertionOption best_insertion(const Instance& instance, const Route& route, PoiId poi);

/// Gain per unit of added cost; +inf when the insertion adds no cost.
double insertion_efficiency(double gain, double delta_cost);

/// Regret of one POI from its per-route insertion values (infeasible routes contribute 0;
/// lists shorter than k are padded with 0).
double regret_value(std::vector<double> values, int depth, RegretRule rule = RegretRule::Classic);

/// Inserts the POI/route pair of maximal gain per unit cost until nothing fits. Exact
/// ties go to a uniform draw from `rng`, or to the lowest POI id and route without one.
void repair_greedy(const Instance& instance, Solution& solution, Rng* rng = nullptr);

/// Inserts the POI of maximal k-regret at its best route until nothing fits; ties as in
/// repair_greedy.
void repair_regret(const Instance& instance, Solution& solution, int depth,
                   RegretRule rule = RegretRule::Classic, Rng* rng = nullptr);

/// Simulated-annealing acceptance: always when candidate > current, otherwise with
/// probability exp((candidate - current) / temperature).
bool accept(double current, double candidate, double temperature, Rng& rng);

/// factor * f(s0) / ln 2.
double start_temperature(double initial_objective, double factor);

struct TraceRow {
    int iteration = 0;
    DestroyOperator destroy = DestroyOperator::Random;
    RepairOperator repair = RepairOperator::Greedy;
    double candidate_objective = 0.0;
    bool accepted = false;
    Outcome outcome = Outcome::Rejected;
    double best_objective = 0.0;
    double temperature = 0.0;
    bool operator==(const TraceRow&) const = default;
};

struct SearchResult {
    Solution best;
    Solution initial;
    std::vector<TraceRow> trace;
    OperatorBank bank;
};

/// ALNS started from the sequential-OP solution built with `config.seed`.
SearchResult alns_solve(const Instance& instance, const SearchConfig& config);

/// ALNS from a caller-supplied feasible initial solution.
SearchResult alns_solve(const Instance& instance, const SearchConfig& config, Solution initial);

}  // namespace otoprv
