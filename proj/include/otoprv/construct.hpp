#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "otoprv/model.hpp"

namespace otoprv {

/// Current marginal gain of every POI given the visit counts committed so far.
class GainTable {
public:
    explicit GainTable(const Instance& instance);
    GainTable(const Instance& instance, std::vector<int> visit_counts);

    double gain(PoiId poi) const { return gains_[static_cast<std::size_t>(poi)]; }
    int count(PoiId poi) const { return counts_[static_cast<std::size_t>(poi)]; }
    std::span<const double> gains() const { return gains_; }
    const std::vector<int>& counts() const { return counts_; }

    void record_visit(PoiId poi);
    void commit(const Route& route);

private:
    const Instance* instance_;
    std::vector<int> counts_;
    std::vector<double> gains_;
};

/// How the candidate set of the stochastic constructor is ranked: by travel cost from the
/// current endpoint, or by gain_i / t_ji.
enum class CandidateRule { Nearest, Desirability };

/// Settings of the stochastic single-route constructor. From the current endpoint j the
/// next POI i is drawn among the `candidate_count` best-ranked feasible POIs with
/// probability proportional to (gain_i / t_ji)^desirability_exponent.
struct OpSolverConfig {
    double desirability_exponent = 4.0;
    int candidate_count = 4;
    CandidateRule candidate_rule = CandidateRule::Nearest;
    int restarts = 3000;
};

/// Appendix greedy: each route starts at the highest-gain POI and appends the POI with
/// the best gain per unit travel until nothing fits. `seed` is accepted for interface
/// symmetry; the result is deterministic.
Solution greedy_solve(const Instance& instance, std::uint64_t seed = 0);

/// Sum of gains over the visits of a route.
double route_gain(const Route& route, const GainTable& gains);

/// Best of `config.restarts` stochastic constructions of one open route maximizing the
/// collected gain. Each restart uses its own RNG stream derived from `seed`, so the best
/// of the first N restarts never gets worse as N grows. Returns an empty route when no
/// POI carries a positive gain.
Route op_solve(const Instance& instance, const GainTable& gains, std::uint64_t seed,
               const OpSolverConfig& config = {});

/// Builds the fleet one route at a time, updating gains after each committed route.
Solution sequential_op_solve(const Instance& instance, std::uint64_t seed,
                             const OpSolverConfig& config = {});

}  // namespace otoprv
