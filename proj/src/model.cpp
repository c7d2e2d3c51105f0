#include "otoprv/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace otoprv {

const char* to_string(RouteRule rule) {
    switch (rule) {
    case RouteRule::Budget: return "budget";
    case RouteRule::Duplicate: return "duplicate";
    case RouteRule::Unreachable: return "unreachable leg";
    case RouteRule::UnknownPoi: return "unknown poi";
    case RouteRule::FleetSize: return "fleet size";
    case RouteRule::CachedCost: return "cached cost";
    }
    return "unknown";
}

ValidationError::ValidationError(std::size_t route_index, RouteRule rule, const std::string& detail)
    : std::runtime_error("route " + std::to_string(route_index) + ": " + to_string(rule) +
                         " violated: " + detail),
      route_index_(route_index),
      rule_(rule) {}

TravelMatrix::TravelMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) data_[i * n + i] = 0.0;
}

TravelMatrix TravelMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    TravelMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw ModelError("travel matrix row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const double v = rows[i][j];
            if (std::isnan(v) || v < 0.0)
                throw ModelError("travel matrix entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is negative or NaN");
            if (i == j && v != 0.0)
                throw ModelError("travel matrix diagonal entry " + std::to_string(i) +
                                 " must be 0");
            m.set(i, j, v);
        }
    }
    return m;
}

std::vector<std::vector<double>> TravelMatrix::rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
}

Instance::Instance(std::vector<Poi> pois, TravelMatrix travel, int fleet_size, double budget,
                   double beta)
    : pois_(std::move(pois)),
      travel_(std::move(travel)),
      fleet_size_(fleet_size),
      budget_(budget),
      beta_(beta) {
    if (!(beta_ > 0.0 && beta_ < 1.0))
        throw ModelError("beta must lie strictly between 0 and 1");
    if (!(budget_ > 0.0) || !std::isfinite(budget_))
        throw ModelError("budget must be a positive finite number");
    if (fleet_size_ < 1) throw ModelError("fleet size must be at least 1");
    if (travel_.size() != pois_.size())
        throw ModelError("travel matrix dimension " + std::to_string(travel_.size()) +
                         " does not match " + std::to_string(pois_.size()) + " POIs");
    for (std::size_t i = 0; i < pois_.size(); ++i) {
        if (pois_[i].id != static_cast<PoiId>(i))
            throw ModelError("POI ids must be dense and ordered; found id " +
                             std::to_string(pois_[i].id) + " at index " + std::to_string(i));
        if (!(pois_[i].weight >= 0.0) || !std::isfinite(pois_[i].weight))
            throw ModelError("POI " + std::to_string(i) + " has a negative or non-finite weight");
    }
    const std::size_t n = pois_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = travel_(i, j);
            if (std::isnan(v) || v < 0.0)
                throw ModelError("travel cost (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is negative or NaN");
            if (i == j && v != 0.0) throw ModelError("travel matrix diagonal must be 0");
        }
}

Instance Instance::with_parameters(int fleet_size, double budget, double beta) const {
    return Instance(pois_, travel_, fleet_size, budget, beta);
}

bool Route::contains(PoiId poi) const {
    return std::find(visits.begin(), visits.end(), poi) != visits.end();
}

std::size_t Solution::total_visits() const {
    std::size_t total = 0;
    for (const auto& r : routes) total += r.size();
    return total;
}

double reward(double weight, int q, double beta) {
    if (q <= 0) return 0.0;
    return weight * std::pow(static_cast<double>(q), beta);
}

double marginal_gain(double weight, int q, double beta) {
    const double next = std::pow(static_cast<double>(q + 1), beta);
    const double now = q <= 0 ? 0.0 : std::pow(static_cast<double>(q), beta);
    return weight * (next - now);
}

double objective_of(const Instance& instance, std::span<const int> visit_counts) {
    double total = 0.0;
    for (std::size_t i = 0; i < visit_counts.size(); ++i)
        total += reward(instance.pois()[i].weight, visit_counts[i], instance.beta());
    return total;
}

double route_cost(const Instance& instance, std::span<const PoiId> visits) {
    double cost = 0.0;
    for (std::size_t k = 1; k < visits.size(); ++k) {
        const double leg = instance.cost(visits[k - 1], visits[k]);
        if (leg == kUnreachable) return kUnreachable;
        cost += leg;
    }
    return cost;
}

std::optional<ValidationError> check_route(const Instance& instance, const Route& route,
                                           std::size_t route_index) {
    const auto n = static_cast<PoiId>(instance.size());
    std::vector<char> seen(instance.size(), 0);
    for (std::size_t k = 0; k < route.visits.size(); ++k) {
        const PoiId p = route.visits[k];
        if (p < 0 || p >= n)
            return ValidationError(route_index, RouteRule::UnknownPoi,
                                   "visit " + std::to_string(k) + " has id " + std::to_string(p));
        if (seen[static_cast<std::size_t>(p)])
            return ValidationError(route_index, RouteRule::Duplicate,
                                   "POI " + std::to_string(p) + " appears twice");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    for (std::size_t k = 1; k < route.visits.size(); ++k) {
        if (!instance.travel().reachable(static_cast<std::size_t>(route.visits[k - 1]),
                                         static_cast<std::size_t>(route.visits[k])))
            return ValidationError(route_index, RouteRule::Unreachable,
                                   "no arc " + std::to_string(route.visits[k - 1]) + " -> " +
                                       std::to_string(route.visits[k]));
    }
    const double cost = route_cost(instance, route.visits);
    if (cost > instance.budget() + kBudgetTolerance) {
        std::ostringstream os;
        os << "cost " << cost << " exceeds budget " << instance.budget();
        return ValidationError(route_index, RouteRule::Budget, os.str());
    }
    if (std::abs(cost - route.cost) > 1e-9) {
        std::ostringstream os;
        os << "cached cost " << route.cost << " differs from recomputed " << cost;
        return ValidationError(route_index, RouteRule::CachedCost, os.str());
    }
    return std::nullopt;
}

Solution evaluate(const Instance& instance, std::vector<Route> routes) {
    if (routes.size() != static_cast<std::size_t>(instance.fleet_size()))
        throw ValidationError(routes.size(), RouteRule::FleetSize,
                              "expected " + std::to_string(instance.fleet_size()) +
                                  " routes, got " + std::to_string(routes.size()));
    Solution sol;
    sol.visit_counts.assign(instance.size(), 0);
    for (std::size_t k = 0; k < routes.size(); ++k) {
        routes[k].cost = route_cost(instance, routes[k].visits);
        if (auto err = check_route(instance, routes[k], k)) throw *err;
        for (PoiId p : routes[k].visits) ++sol.visit_counts[static_cast<std::size_t>(p)];
    }
    sol.routes = std::move(routes);
    sol.objective = objective_of(instance, sol.visit_counts);
    return sol;
}

std::optional<std::string> find_violation(const Instance& instance, const Solution& solution,
                                          double objective_tolerance) {
    if (solution.routes.size() != static_cast<std::size_t>(instance.fleet_size()))
        return std::string("fleet size violated: expected ") +
               std::to_string(instance.fleet_size()) + " routes, got " +
               std::to_string(solution.routes.size());
    std::vector<int> counts(instance.size(), 0);
    for (std::size_t k = 0; k < solution.routes.size(); ++k) {
        if (auto err = check_route(instance, solution.routes[k], k)) return std::string(err->what());
        for (PoiId p : solution.routes[k].visits) ++counts[static_cast<std::size_t>(p)];
    }
    if (counts != solution.visit_counts) return std::string("visit counts differ from recount");
    const double recomputed = objective_of(instance, counts);
    if (std::abs(recomputed - solution.objective) > objective_tolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "objective mismatch: declared " << solution.objective << ", recomputed "
           << recomputed;
        return os.str();
    }
    return std::nullopt;
}

Solution empty_solution(const Instance& instance) {
    Solution sol;
    sol.routes.resize(static_cast<std::size_t>(instance.fleet_size()));
    sol.visit_counts.assign(instance.size(), 0);
    return sol;
}

double insertion_delta(const Instance& instance, const Route& route, std::size_t pos, PoiId poi) {
    const auto& v = route.visits;
    if (v.empty()) return 0.0;
    if (pos == 0) return instance.cost(poi, v.front());
    if (pos == v.size()) return instance.cost(v.back(), poi);
    const double in = instance.cost(v[pos - 1], poi);
    const double out = instance.cost(poi, v[pos]);
    if (in == kUnreachable || out == kUnreachable) return kUnreachable;
    return in + out - instance.cost(v[pos - 1], v[pos]);
}

double removal_saving(const Instance& instance, const Route& route, std::size_t pos) {
    const auto& v = route.visits;
    if (v.size() <= 1) return route.cost;
    if (pos == 0) return instance.cost(v[0], v[1]);
    if (pos + 1 == v.size()) return instance.cost(v[pos - 1], v[pos]);
    const double splice = instance.cost(v[pos - 1], v[pos + 1]);
    if (splice == kUnreachable) return -kUnreachable;
    return instance.cost(v[pos - 1], v[pos]) + instance.cost(v[pos], v[pos + 1]) - splice;
}

RemovalDelta delta_remove(const Instance& instance, const Solution& solution,
                          std::size_t route_index, PoiId poi) {
    const Route& route = solution.routes.at(route_index);
    const auto it = std::find(route.visits.begin(), route.visits.end(), poi);
    if (it == route.visits.end())
        throw std::invalid_argument("POI " + std::to_string(poi) + " is not in route " +
                                    std::to_string(route_index));
    const auto pos = static_cast<std::size_t>(it - route.visits.begin());
    const int q = solution.visit_counts[static_cast<std::size_t>(poi)];
    RemovalDelta d;
    d.reward_loss = marginal_gain(instance.weight(poi), q - 1, instance.beta());
    d.cost_saving = removal_saving(instance, route, pos);
    d.admissible = d.cost_saving != -kUnreachable &&
                   route.cost - d.cost_saving <= instance.budget() + kBudgetTolerance;
    return d;
}

void insert_visit(const Instance& instance, Solution& solution, std::size_t route_index,
                  std::size_t pos, PoiId poi) {
    Route& route = solution.routes[route_index];
    route.visits.insert(route.visits.begin() + static_cast<std::ptrdiff_t>(pos), poi);
    route.cost = route_cost(instance, route.visits);
    int& q = solution.visit_counts[static_cast<std::size_t>(poi)];
    solution.objective += marginal_gain(instance.weight(poi), q, instance.beta());
    ++q;
}

void remove_visit(const Instance& instance, Solution& solution, std::size_t route_index,
                  std::size_t pos) {
    Route& route = solution.routes[route_index];
    const PoiId poi = route.visits[pos];
    route.visits.erase(route.visits.begin() + static_cast<std::ptrdiff_t>(pos));
    route.cost = route_cost(instance, route.visits);
    int& q = solution.visit_counts[static_cast<std::size_t>(poi)];
    --q;
    solution.objective -= marginal_gain(instance.weight(poi), q, instance.beta());
}

void clear_route(const Instance& instance, Solution& solution, std::size_t route_index) {
    Route& route = solution.routes[route_index];
    for (PoiId p : route.visits) --solution.visit_counts[static_cast<std::size_t>(p)];
    route.visits.clear();
    route.cost = 0.0;
    refresh_objective(instance, solution);
}

void refresh_objective(const Instance& instance, Solution& solution) {
    solution.objective = objective_of(instance, solution.visit_counts);
}

}  // namespace otoprv
