#include <stdexcept>

#include "otoprv/alns.hpp"

namespace otoprv {

namespace {

// Objective differences below this are treated as ties.
constexpr double kImprovementEps = 1e-9;

void apply_destroy(const Instance& instance, Solution& s, DestroyOperator op,
                   const SearchConfig& config, Rng& rng) {
    switch (op) {
    case DestroyOperator::Random: destroy_random(instance, s, config.removal_fraction, rng); break;
    case DestroyOperator::Worst:
        destroy_worst(instance, s, config.removal_fraction, config.worst_removal_exponent, rng);
        break;
    case DestroyOperator::Related: destroy_related(instance, s, config.removal_fraction, rng); break;
    case DestroyOperator::Route: destroy_route(instance, s, config.removal_fraction, rng); break;
    }
}

void apply_repair(const Instance& instance, Solution& s, RepairOperator op,
                  const SearchConfig& config, Rng& rng) {
    switch (op) {
    case RepairOperator::Greedy: repair_greedy(instance, s, &rng); break;
    case RepairOperator::Regret:
        repair_regret(instance, s, config.regret_depth, config.regret_rule, &rng);
        break;
    }
}

}  // namespace

SearchResult alns_solve(const Instance& instance, const SearchConfig& config) {
    config.validate();
    return alns_solve(instance, config, sequential_op_solve(instance, config.seed, config.initial));
}

SearchResult alns_solve(const Instance& instance, const SearchConfig& config, Solution initial) {
    config.validate();
    if (auto violation = find_violation(instance, initial, 1e-6))
        throw ModelError("initial solution is infeasible: " + *violation);

    SearchResult result;
    result.initial = initial;
    Rng rng(derive_seed(config.seed, 0xa125));
    Solution current = initial;
    Solution best = std::move(initial);
    OperatorBank& bank = result.bank;

    double t_max = start_temperature(best.objective, config.start_temperature_factor);
    if (!(t_max > 0.0)) t_max = config.min_temperature;
    double temperature = t_max;
    int non_improving = 0;

    for (int it = 1; it <= config.max_iterations && non_improving < config.max_non_improving; ++it) {
        const std::size_t d = bank.select(OperatorFamily::Destroy, rng);
        const std::size_t r = bank.select(OperatorFamily::Repair, rng);

        Solution candidate = current;
        apply_destroy(instance, candidate, kDestroyOperators[d], config, rng);
        apply_repair(instance, candidate, kRepairOperators[r], config, rng);
        if (config.validate_each_iteration) {
            if (auto violation = find_violation(instance, candidate))
                throw std::logic_error("iteration " + std::to_string(it) + ": " + *violation);
        }

        const double candidate_objective = candidate.objective;
        Outcome outcome;
        if (candidate.objective > best.objective + kImprovementEps) {
            outcome = Outcome::NewBest;
            best = candidate;
            current = std::move(candidate);
            non_improving = 0;
        } else {
            ++non_improving;
            if (accept(current.objective, candidate.objective, temperature, rng)) {
                outcome = candidate.objective > current.objective + kImprovementEps
                              ? Outcome::Improving
                              : Outcome::AcceptedWorse;
                if (outcome == Outcome::Improving && config.stall_rule == StallRule::Current)
                    non_improving = 0;
                current = std::move(candidate);
            } else {
                outcome = Outcome::Rejected;
            }
        }
        bank.update_scores(d, r, outcome, config.scores);

        TraceRow row;
        row.iteration = it;
        row.destroy = kDestroyOperators[d];
        row.repair = kRepairOperators[r];
        row.candidate_objective = candidate_objective;
        row.accepted = outcome != Outcome::Rejected;
        row.outcome = outcome;
        row.best_objective = best.objective;
        row.temperature = temperature;
        result.trace.push_back(row);

        if (it % config.segment_length == 0) bank.end_segment(config.reaction_factor);
        temperature *= config.cooling_rate;
        if (temperature < config.min_temperature) temperature = t_max;
    }
    result.best = std::move(best);
    return result;
}

}  // namespace otoprv
