#include "otoprv/construct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "otoprv/random.hpp"

namespace otoprv {

GainTable::GainTable(const Instance& instance)
    : GainTable(instance, std::vector<int>(instance.size(), 0)) {}

GainTable::GainTable(const Instance& instance, std::vector<int> visit_counts)
    : instance_(&instance), counts_(std::move(visit_counts)), gains_(counts_.size()) {
    if (counts_.size() != instance.size())
        throw std::invalid_argument("visit count vector does not match the instance size");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        gains_[i] = marginal_gain(instance.pois()[i].weight, counts_[i], instance.beta());
}

void GainTable::record_visit(PoiId poi) {
    const auto i = static_cast<std::size_t>(poi);
    ++counts_[i];
    gains_[i] = marginal_gain(instance_->pois()[i].weight, counts_[i], instance_->beta());
}

void GainTable::commit(const Route& route) {
    for (PoiId p : route.visits) record_visit(p);
}

double route_gain(const Route& route, const GainTable& gains) {
    double total = 0.0;
    for (PoiId p : route.visits) total += gains.gain(p);
    return total;
}

namespace {

// Feasible extension of a route ending at `last` with accumulated cost `cost`.
bool can_append(const Instance& instance, PoiId last, PoiId next, double cost) {
    const double leg = instance.cost(last, next);
    return leg < kUnreachable && cost + leg <= instance.budget() + kBudgetTolerance;
}

// Reward per unit travel: zero-cost legs rank above everything, then by gain.
struct Efficiency {
    bool free = false;
    double value = 0.0;

    static Efficiency of(double gain, double leg) {
        if (leg <= 0.0) return {true, gain};
        return {false, gain / leg};
    }
    bool operator>(const Efficiency& o) const {
        if (free != o.free) return free;
        return value > o.value;
    }
};

}  // namespace

Solution greedy_solve(const Instance& instance, std::uint64_t /*seed*/) {
    const auto n = static_cast<PoiId>(instance.size());
    GainTable gains(instance);
    std::vector<Route> routes(static_cast<std::size_t>(instance.fleet_size()));
    std::vector<char> in_route(instance.size());
    for (Route& route : routes) {
        std::fill(in_route.begin(), in_route.end(), 0);
        PoiId start = -1;
        for (PoiId i = 0; i < n; ++i)
            if (gains.gain(i) > 0.0 && (start < 0 || gains.gain(i) > gains.gain(start))) start = i;
        if (start < 0) continue;
        route.visits.push_back(start);
        in_route[static_cast<std::size_t>(start)] = 1;
        gains.record_visit(start);
        PoiId last = start;
        while (true) {
            PoiId best = -1;
            Efficiency best_eff;
            for (PoiId i = 0; i < n; ++i) {
                if (in_route[static_cast<std::size_t>(i)] || gains.gain(i) <= 0.0) continue;
                if (!can_append(instance, last, i, route.cost)) continue;
                const Efficiency eff = Efficiency::of(gains.gain(i), instance.cost(last, i));
                if (best < 0 || eff > best_eff) {
                    best = i;
                    best_eff = eff;
                }
            }
            if (best < 0) break;
            route.cost += instance.cost(last, best);
            route.visits.push_back(best);
            in_route[static_cast<std::size_t>(best)] = 1;
            gains.record_visit(best);
            last = best;
        }
    }
    return evaluate(instance, std::move(routes));
}

namespace {

struct Candidate {
    PoiId poi = -1;
    double key = 0.0;
    double ratio = 0.0;
};

// One stochastic construction. `marks` must be all zero on entry and is left all zero.
Route construct_once(const Instance& instance, const GainTable& gains, double total_gain,
                     const OpSolverConfig& config, Rng& rng, std::vector<char>& marks,
                     std::vector<Candidate>& top) {
    const auto n = static_cast<PoiId>(instance.size());
    Route route;
    // Start drawn proportionally to gain; any start is admissible for an open route.
    double pick = uniform01(rng) * total_gain;
    PoiId start = -1;
    for (PoiId i = 0; i < n; ++i) {
        const double g = gains.gain(i);
        if (g <= 0.0) continue;
        start = i;
        if (pick < g) break;
        pick -= g;
    }
    if (start < 0) return route;
    route.visits.push_back(start);
    marks[static_cast<std::size_t>(start)] = 1;
    PoiId last = start;
    const auto width = static_cast<std::size_t>(std::max(1, config.candidate_count));
    while (true) {
        top.clear();
        PoiId free_pick = -1;
        for (PoiId i = 0; i < n; ++i) {
            const double g = gains.gain(i);
            if (marks[static_cast<std::size_t>(i)] || g <= 0.0) continue;
            if (!can_append(instance, last, i, route.cost)) continue;
            const double leg = instance.cost(last, i);
            if (leg <= 0.0) {
                if (free_pick < 0 || g > gains.gain(free_pick)) free_pick = i;
                continue;
            }
            const double ratio = g / leg;
            const double key = config.candidate_rule == CandidateRule::Nearest ? -leg : ratio;
            if (top.size() == width && key <= top.back().key) continue;
            auto pos = std::find_if(top.begin(), top.end(),
                                    [&](const Candidate& c) { return key > c.key; });
            top.insert(pos, Candidate{i, key, ratio});
            if (top.size() > width) top.pop_back();
        }
        PoiId next = free_pick;
        if (next < 0) {
            if (top.empty()) break;
            double sum = 0.0;
            std::array<double, 64> desirability{};
            const std::size_t m = std::min(top.size(), desirability.size());
            double max_ratio = 0.0;
            for (std::size_t c = 0; c < m; ++c) max_ratio = std::max(max_ratio, top[c].ratio);
            for (std::size_t c = 0; c < m; ++c) {
                desirability[c] = std::pow(top[c].ratio / max_ratio,
                                           config.desirability_exponent);
                sum += desirability[c];
            }
            double u = uniform01(rng) * sum;
            next = top[m - 1].poi;
            for (std::size_t c = 0; c < m; ++c) {
                if (u < desirability[c]) {
                    next = top[c].poi;
                    break;
                }
                u -= desirability[c];
            }
        }
        route.cost += instance.cost(last, next);
        route.visits.push_back(next);
        marks[static_cast<std::size_t>(next)] = 1;
        last = next;
    }
    for (PoiId p : route.visits) marks[static_cast<std::size_t>(p)] = 0;
    return route;
}

}  // namespace

Route op_solve(const Instance& instance, const GainTable& gains, std::uint64_t seed,
               const OpSolverConfig& config) {
    double total_gain = 0.0;
    for (double g : gains.gains())
        if (g > 0.0) total_gain += g;
    Route best;
    if (total_gain <= 0.0) return best;
    double best_gain = -1.0;
    std::vector<char> marks(instance.size(), 0);
    std::vector<Candidate> top;
    const int restarts = std::max(1, config.restarts);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Route route = construct_once(instance, gains, total_gain, config, rng, marks, top);
        const double g = route_gain(route, gains);
        if (g > best_gain) {
            best_gain = g;
            best = std::move(route);
        }
    }
    best.cost = route_cost(instance, best.visits);
    return best;
}

Solution sequential_op_solve(const Instance& instance, std::uint64_t seed,
                             const OpSolverConfig& config) {
    GainTable gains(instance);
    std::vector<Route> routes;
    routes.reserve(static_cast<std::size_t>(instance.fleet_size()));
    for (int v = 0; v < instance.fleet_size(); ++v) {
        Route route = op_solve(instance, gains, seed + static_cast<std::uint64_t>(v), config);
        gains.commit(route);
        routes.push_back(std::move(route));
    }
    return evaluate(instance, std::move(routes));
}

}  // namespace otoprv
