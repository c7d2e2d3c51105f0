#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "otoprv/alns.hpp"

namespace otoprv {

const char* to_string(DestroyOperator op) {
    switch (op) {
    case DestroyOperator::Random: return "random";
    case DestroyOperator::Worst: return "worst";
    case DestroyOperator::Related: return "related";
    case DestroyOperator::Route: return "route";
    }
    return "?";
}

const char* to_string(RepairOperator op) {
    switch (op) {
    case RepairOperator::Greedy: return "greedy";
    case RepairOperator::Regret: return "regret";
    }
    return "?";
}

const char* to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::NewBest: return "new-best";
    case Outcome::Improving: return "improving";
    case Outcome::AcceptedWorse: return "accepted-worse";
    case Outcome::Rejected: return "rejected";
    }
    return "?";
}

void SearchConfig::validate() const {
    const auto fail = [](const std::string& what) { throw ModelError("search config: " + what); };
    if (!(removal_fraction > 0.0 && removal_fraction < 1.0))
        fail("removal_fraction must lie in (0, 1)");
    if (!(worst_removal_exponent > 0.0)) fail("worst_removal_exponent must be positive");
    if (!(scores[0] > scores[1] && scores[1] > scores[2] && scores[2] > scores[3]))
        fail("scores must be strictly decreasing");
    if (!(reaction_factor > 0.0 && reaction_factor <= 1.0))
        fail("reaction_factor must lie in (0, 1]");
    if (segment_length < 1) fail("segment_length must be at least 1");
    if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) fail("cooling_rate must lie in (0, 1)");
    if (!(min_temperature > 0.0)) fail("min_temperature must be positive");
    if (!(start_temperature_factor > 0.0)) fail("start_temperature_factor must be positive");
    if (max_iterations < 0) fail("max_iterations must be non-negative");
    if (max_non_improving < 1) fail("max_non_improving must be at least 1");
    if (regret_depth < 2) fail("regret_depth must be at least 2");
    if (initial.restarts < 1) fail("initial.restarts must be at least 1");
    if (initial.candidate_count < 1) fail("initial.candidate_count must be at least 1");
    if (!(initial.desirability_exponent >= 0.0))
        fail("initial.desirability_exponent must be non-negative");
}

// ---------------------------------------------------------------------------
// Operator bank

namespace {
constexpr double kMinOperatorWeight = 1e-6;
}

OperatorBank::OperatorBank()
    : destroy_(kDestroyOperators.size()), repair_(kRepairOperators.size()) {}

OperatorBank::OperatorBank(std::vector<double> destroy_weights, std::vector<double> repair_weights) {
    const auto fill = [](std::vector<OperatorStats>& out, const std::vector<double>& w) {
        if (w.empty()) throw std::invalid_argument("operator family must not be empty");
        for (double x : w) {
            if (!(x > 0.0)) throw std::invalid_argument("operator weights must be positive");
            out.push_back(OperatorStats{x, 0.0, 0});
        }
    };
    fill(destroy_, destroy_weights);
    fill(repair_, repair_weights);
}

std::span<const OperatorStats> OperatorBank::stats(OperatorFamily f) const { return family(f); }

std::vector<double> OperatorBank::probabilities(OperatorFamily f) const {
    const auto& ops = family(f);
    double total = 0.0;
    for (const auto& op : ops) total += op.weight;
    std::vector<double> p;
    p.reserve(ops.size());
    for (const auto& op : ops) p.push_back(op.weight / total);
    return p;
}

std::size_t OperatorBank::select(OperatorFamily f, Rng& rng) const {
    const auto& ops = family(f);
    double total = 0.0;
    for (const auto& op : ops) total += op.weight;
    double u = uniform01(rng) * total;
    for (std::size_t l = 0; l < ops.size(); ++l) {
        if (u < ops[l].weight) return l;
        u -= ops[l].weight;
    }
    return ops.size() - 1;
}

void OperatorBank::update_scores(std::size_t destroy, std::size_t repair, Outcome outcome,
                                 const std::array<double, 4>& scores) {
    const double sigma = scores[static_cast<std::size_t>(outcome)];
    for (auto* op : {&destroy_.at(destroy), &repair_.at(repair)}) {
        op->score += sigma;
        ++op->uses;
    }
}

void OperatorBank::end_segment(double reaction) {
    for (auto* ops : {&destroy_, &repair_})
        for (auto& op : *ops) {
            if (op.uses > 0) {
                const double updated =
                    op.weight * (1.0 - reaction) + reaction * op.score / op.uses;
                // Floor keeps every operator on the wheel (zero score with reaction 1).
                op.weight = std::max(updated, kMinOperatorWeight);
            }
            op.score = 0.0;
            op.uses = 0;
        }
}

// ---------------------------------------------------------------------------
// Destroy operators

std::size_t removal_count(std::size_t count, double fraction) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(count) * fraction));
}

double removal_value(const RemovalDelta& delta) {
    if (delta.reward_loss <= 0.0) return 0.0;
    if (delta.cost_saving <= 0.0) return kUnreachable;
    return delta.reward_loss / delta.cost_saving;
}

std::size_t worst_removal_index(double y, double exponent, std::size_t size) {
    if (size == 0) return 0;
    const auto idx =
        static_cast<std::size_t>(std::floor(std::pow(y, exponent) * static_cast<double>(size)));
    return std::min(idx, size - 1);
}

double closeness(const Instance& instance, PoiId a, PoiId b) {
    return std::min(instance.cost(a, b), instance.cost(b, a));
}

namespace {

std::size_t position_of(const Route& route, PoiId poi) {
    return static_cast<std::size_t>(std::find(route.visits.begin(), route.visits.end(), poi) -
                                    route.visits.begin());
}

bool admissible_removal(const Instance& instance, const Route& route, std::size_t pos) {
    const double saving = removal_saving(instance, route, pos);
    return saving != -kUnreachable && route.cost - saving <= instance.budget() + kBudgetTolerance;
}

// Removes the visit if the splice keeps the route feasible.
bool try_remove(const Instance& instance, Solution& solution, std::size_t route, PoiId poi,
                std::vector<RemovedVisit>& removed) {
    const Route& r = solution.routes[route];
    const std::size_t pos = position_of(r, poi);
    if (pos == r.size() || !admissible_removal(instance, r, pos)) return false;
    remove_visit(instance, solution, route, pos);
    removed.push_back({route, poi});
    return true;
}

}  // namespace

std::vector<RemovedVisit> destroy_random(const Instance& instance, Solution& solution,
                                         double fraction, Rng& rng) {
    std::vector<RemovedVisit> removed;
    for (std::size_t k = 0; k < solution.routes.size(); ++k) {
        const std::size_t target = removal_count(solution.routes[k].size(), fraction);
        if (target == 0) continue;
        std::vector<PoiId> order = solution.routes[k].visits;
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t done = 0;
        for (PoiId p : order) {
            if (done == target) break;
            if (try_remove(instance, solution, k, p, removed)) ++done;
        }
    }
    refresh_objective(instance, solution);
    return removed;
}

std::vector<RemovedVisit> destroy_worst(const Instance& instance, Solution& solution,
                                        double fraction, double exponent, Rng& rng) {
    std::vector<RemovedVisit> removed;
    const std::size_t target = removal_count(solution.total_visits(), fraction);
    struct Entry {
        double value;
        PoiId poi;
        std::size_t route;
        std::size_t pos;
    };
    std::vector<Entry> entries;
    for (std::size_t step = 0; step < target; ++step) {
        entries.clear();
        for (std::size_t k = 0; k < solution.routes.size(); ++k) {
            const Route& r = solution.routes[k];
            for (std::size_t pos = 0; pos < r.size(); ++pos) {
                if (!admissible_removal(instance, r, pos)) continue;
                const PoiId p = r.visits[pos];
                RemovalDelta d;
                d.reward_loss = marginal_gain(
                    instance.weight(p), solution.visit_counts[static_cast<std::size_t>(p)] - 1,
                    instance.beta());
                d.cost_saving = removal_saving(instance, r, pos);
                entries.push_back({removal_value(d), p, k, pos});
            }
        }
        if (entries.empty()) break;
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.value, a.poi, a.route) < std::tie(b.value, b.poi, b.route);
        });
        const Entry& pick = entries[worst_removal_index(uniform01(rng), exponent, entries.size())];
        remove_visit(instance, solution, pick.route, pick.pos);
        removed.push_back({pick.route, pick.poi});
    }
    refresh_objective(instance, solution);
    return removed;
}

std::vector<RemovedVisit> destroy_related_around(const Instance& instance, Solution& solution,
                                                 double fraction, PoiId center) {
    std::vector<RemovedVisit> removed;
    const std::size_t target = removal_count(solution.total_visits(), fraction);
    if (target == 0) return removed;
    struct Entry {
        double distance;
        PoiId poi;
        std::size_t route;
    };
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < solution.routes.size(); ++k)
        for (PoiId p : solution.routes[k].visits)
            entries.push_back({closeness(instance, center, p), p, k});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.distance, a.poi, a.route) < std::tie(b.distance, b.poi, b.route);
    });
    for (const Entry& e : entries) {
        if (removed.size() == target) break;
        try_remove(instance, solution, e.route, e.poi, removed);
    }
    refresh_objective(instance, solution);
    return removed;
}

std::vector<RemovedVisit> destroy_related(const Instance& instance, Solution& solution,
                                          double fraction, Rng& rng) {
    std::uniform_int_distribution<PoiId> pick(0, static_cast<PoiId>(instance.size()) - 1);
    return destroy_related_around(instance, solution, fraction, pick(rng));
}

std::vector<RemovedVisit> destroy_route(const Instance& instance, Solution& solution,
                                        double fraction, Rng& rng) {
    std::vector<RemovedVisit> removed;
    const std::size_t fleet = solution.routes.size();
    if (fleet == 0) return removed;
    const std::size_t target = std::clamp<std::size_t>(removal_count(fleet, fraction), 1, fleet);
    std::vector<std::size_t> order(fleet);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t c = 0; c < target; ++c) {
        const std::size_t k = order[c];
        for (PoiId p : solution.routes[k].visits) removed.push_back({k, p});
        clear_route(instance, solution, k);
    }
    return removed;
}

// ---------------------------------------------------------------------------
// Repair operators

InsertionOption best_insertion(const Instance& instance, const Route& route, PoiId poi) {
    InsertionOption best;
    if (route.contains(poi)) return best;
    for (std::size_t pos = 0; pos <= route.size(); ++pos) {
        const double delta = insertion_delta(instance, route, pos, poi);
        if (delta == kUnreachable) continue;
        if (route.cost + delta > instance.budget() + kBudgetTolerance) continue;
        if (!best.feasible || delta < best.delta_cost) best = {delta, pos, true};
    }
    return best;
}

double insertion_efficiency(double gain, double delta_cost) {
    if (delta_cost <= 0.0) return kUnreachable;
    return gain / delta_cost;
}

double regret_value(std::vector<double> values, int depth, RegretRule rule) {
    std::sort(values.begin(), values.end(), std::greater<>());
    const auto k = static_cast<std::size_t>(std::max(depth, 1));
    if (values.size() < k) values.resize(k, 0.0);
    const double top = values.front();
    const auto diff = [](double a, double b) {
        // a - b with inf - inf == 0.
        if (a == b) return 0.0;
        return a - b;
    };
    double regret = 0.0;
    if (rule == RegretRule::Classic) {
        for (std::size_t j = 1; j < k; ++j) regret += diff(top, values[j]);
    } else {
        for (std::size_t j = 0; j < k; ++j) regret += diff(values[j], top);
    }
    return regret;
}

namespace {

// Caches the minimum-cost insertion of every POI into every route; only the column of a
// modified route is recomputed after an insertion.
class InsertionCache {
public:
    InsertionCache(const Instance& instance, const Solution& solution)
        : instance_(instance),
          solution_(solution),
          fleet_(solution.routes.size()),
          table_(instance.size() * fleet_),
          gains_(instance.size()) {
        for (std::size_t k = 0; k < fleet_; ++k) refresh_route(k);
        for (std::size_t i = 0; i < gains_.size(); ++i) refresh_gain(static_cast<PoiId>(i));
    }

    void refresh_route(std::size_t k) {
        const Route& route = solution_.routes[k];
        for (std::size_t i = 0; i < instance_.size(); ++i)
            table_[i * fleet_ + k] = best_insertion(instance_, route, static_cast<PoiId>(i));
    }

    void refresh_gain(PoiId poi) {
        const auto i = static_cast<std::size_t>(poi);
        gains_[i] = marginal_gain(instance_.weight(poi), solution_.visit_counts[i], instance_.beta());
    }

    const InsertionOption& option(PoiId poi, std::size_t k) const {
        return table_[static_cast<std::size_t>(poi) * fleet_ + k];
    }
    double gain(PoiId poi) const { return gains_[static_cast<std::size_t>(poi)]; }
    std::size_t fleet() const { return fleet_; }

private:
    const Instance& instance_;
    const Solution& solution_;
    std::size_t fleet_;
    std::vector<InsertionOption> table_;
    std::vector<double> gains_;
};

void apply_insertion(const Instance& instance, Solution& solution, InsertionCache& cache,
                     PoiId poi, std::size_t route) {
    insert_visit(instance, solution, route, cache.option(poi, route).position, poi);
    cache.refresh_route(route);
    cache.refresh_gain(poi);
}

}  // namespace

namespace {

// Reservoir draw among exact ties; without an rng the first (lowest id) candidate stays.
bool take_tie(Rng* rng, int& ties) {
    ++ties;
    if (!rng) return false;
    return std::uniform_int_distribution<int>(1, ties)(*rng) == 1;
}

}  // namespace

void repair_greedy(const Instance& instance, Solution& solution, Rng* rng) {
    InsertionCache cache(instance, solution);
    const auto n = static_cast<PoiId>(instance.size());
    while (true) {
        PoiId best_poi = -1;
        std::size_t best_route = 0;
        double best_eff = 0.0;
        double best_gain = 0.0;
        int ties = 1;
        for (PoiId i = 0; i < n; ++i) {
            const double g = cache.gain(i);
            if (g <= 0.0) continue;
            for (std::size_t k = 0; k < cache.fleet(); ++k) {
                const InsertionOption& opt = cache.option(i, k);
                if (!opt.feasible) continue;
                const double eff = insertion_efficiency(g, opt.delta_cost);
                // Zero-cost insertions all rank +inf; the larger gain goes first.
                const bool free = eff == kUnreachable;
                bool better = best_poi < 0 || eff > best_eff || (free && eff == best_eff && g > best_gain);
                if (!better && eff == best_eff && (!free || g == best_gain)) better = take_tie(rng, ties);
                else if (better) ties = 1;
                if (better) {
                    best_poi = i;
                    best_route = k;
                    best_eff = eff;
                    best_gain = g;
                }
            }
        }
        if (best_poi < 0) break;
        apply_insertion(instance, solution, cache, best_poi, best_route);
    }
    refresh_objective(instance, solution);
}

void repair_regret(const Instance& instance, Solution& solution, int depth, RegretRule rule, Rng* rng) {
    if (depth < 2) throw std::invalid_argument("regret depth must be at least 2");
    InsertionCache cache(instance, solution);
    const auto n = static_cast<PoiId>(instance.size());
    std::vector<double> values(cache.fleet());
    while (true) {
        PoiId best_poi = -1;
        std::size_t best_route = 0;
        double best_regret = 0.0;
        double best_top = 0.0;
        double best_gain = 0.0;
        int ties = 1;
        for (PoiId i = 0; i < n; ++i) {
            const double g = cache.gain(i);
            if (g <= 0.0) continue;
            bool any = false;
            std::size_t top_route = 0;
            double top = 0.0;
            for (std::size_t k = 0; k < cache.fleet(); ++k) {
                const InsertionOption& opt = cache.option(i, k);
                values[k] = opt.feasible ? insertion_efficiency(g, opt.delta_cost) : 0.0;
                if (opt.feasible && (!any || values[k] > top)) {
                    any = true;
                    top = values[k];
                    top_route = k;
                }
            }
            if (!any) continue;
            const double regret = regret_value(values, depth, rule);
            bool better = best_poi < 0 || regret > best_regret ||
                          (regret == best_regret && (top > best_top || (top == best_top && g > best_gain)));
            if (!better && regret == best_regret && top == best_top && g == best_gain) better = take_tie(rng, ties);
            else if (better) ties = 1;
            if (better) {
                best_poi = i;
                best_route = top_route;
                best_regret = regret;
                best_top = top;
                best_gain = g;
            }
        }
        if (best_poi < 0) break;
        apply_insertion(instance, solution, cache, best_poi, best_route);
    }
    refresh_objective(instance, solution);
}

// ---------------------------------------------------------------------------
// Acceptance

bool accept(double current, double candidate, double temperature, Rng& rng) {
    if (candidate > current) return true;
    return uniform01(rng) < std::exp((candidate - current) / temperature);
}

double start_temperature(double initial_objective, double factor) {
    return factor * initial_objective / std::log(2.0);
}

}  // namespace otoprv
