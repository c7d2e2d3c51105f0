#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace otoprv {

using PoiId = int;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
// Slack on the per-route budget check; splice arithmetic accumulates rounding.
inline constexpr double kBudgetTolerance = 1e-9;

/// Thrown when an instance or configuration violates its invariants.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RouteRule { Budget, Duplicate, Unreachable, UnknownPoi, FleetSize, CachedCost };

const char* to_string(RouteRule rule);

/// A route (or the fleet) failed a feasibility rule.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::size_t route_index, RouteRule rule, const std::string& detail);

    std::size_t route_index() const { return route_index_; }
    RouteRule rule() const { return rule_; }

private:
    std::size_t route_index_;
    RouteRule rule_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

struct Poi {
    PoiId id = 0;
    double weight = 0.0;
    std::optional<Point> position;
    bool operator==(const Poi&) const = default;
};

/// Dense n x n travel costs. Absent arcs hold kUnreachable; symmetry is not required.
class TravelMatrix {
public:
    TravelMatrix() = default;
    explicit TravelMatrix(std::size_t n, double fill = kUnreachable);

    /// Builds from nested rows; throws ModelError on ragged rows, a nonzero diagonal
    /// or negative entries.
    static TravelMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double cost) { data_[i * n_ + j] = cost; }
    bool reachable(std::size_t i, std::size_t j) const { return data_[i * n_ + j] < kUnreachable; }

    std::vector<std::vector<double>> rows() const;

    bool operator==(const TravelMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Immutable problem data. Construction validates every invariant.
class Instance {
public:
    Instance(std::vector<Poi> pois, TravelMatrix travel, int fleet_size, double budget, double beta);

    std::size_t size() const { return pois_.size(); }
    const std::vector<Poi>& pois() const { return pois_; }
    const TravelMatrix& travel() const { return travel_; }
    double weight(PoiId i) const { return pois_[static_cast<std::size_t>(i)].weight; }
    double cost(PoiId i, PoiId j) const {
        return travel_(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    int fleet_size() const { return fleet_size_; }
    double budget() const { return budget_; }
    double beta() const { return beta_; }

    /// Same POIs and matrix with a different fleet size, budget or beta.
    Instance with_parameters(int fleet_size, double budget, double beta) const;

    bool operator==(const Instance&) const = default;

private:
    std::vector<Poi> pois_;
    TravelMatrix travel_;
    int fleet_size_;
    double budget_;
    double beta_;
};

struct Route {
    std::vector<PoiId> visits;
    double cost = 0.0;

    bool empty() const { return visits.empty(); }
    std::size_t size() const { return visits.size(); }
    bool contains(PoiId poi) const;
    bool operator==(const Route&) const = default;
};

struct Solution {
    std::vector<Route> routes;
    std::vector<int> visit_counts;
    double objective = 0.0;

    std::size_t total_visits() const;
    bool operator==(const Solution&) const = default;
};

/// w * q^beta, with reward(w, 0, beta) == 0 exactly.
double reward(double weight, int q, double beta);

/// Reward of one more visit: w * ((q+1)^beta - q^beta).
double marginal_gain(double weight, int q, double beta);

/// Sum of weight * q^beta over all POIs.
double objective_of(const Instance& instance, std::span<const int> visit_counts);

/// Sum of consecutive legs. The virtual depots cost nothing, so single-POI and empty
/// routes cost 0. Returns kUnreachable when any leg is absent.
double route_cost(const Instance& instance, std::span<const PoiId> visits);

/// First violated rule of a single route (ids, distinctness, legs, budget, cached cost).
std::optional<ValidationError> check_route(const Instance& instance, const Route& route,
                                           std::size_t route_index);

/// Recounts visits and computes the objective. Throws ValidationError naming the first
/// infeasible route, or FleetSize if the route count differs from the fleet.
Solution evaluate(const Instance& instance, std::vector<Route> routes);

/// Full consistency check of a cached solution: route rules, visit counts, objective.
std::optional<std::string> find_violation(const Instance& instance, const Solution& solution,
                                          double objective_tolerance = 1e-9);

/// Empty routes for the whole fleet.
Solution empty_solution(const Instance& instance);

struct RemovalDelta {
    double reward_loss = 0.0;
    double cost_saving = 0.0;
    bool admissible = true;

    /// reward_loss / cost_saving.
    double value() const { return reward_loss / cost_saving; }
};

/// Effect of splicing `poi` out of route `route_index`. Inadmissible when the
/// reconnecting leg is absent or the spliced route would break the budget.
RemovalDelta delta_remove(const Instance& instance, const Solution& solution,
                          std::size_t route_index, PoiId poi);

/// Extra cost of inserting `poi` before position `pos` (pos == size appends).
double insertion_delta(const Instance& instance, const Route& route, std::size_t pos, PoiId poi);

/// Cost saved by splicing out the visit at `pos`; -kUnreachable if the reconnecting leg
/// is absent.
double removal_saving(const Instance& instance, const Route& route, std::size_t pos);

// In-place edits keeping visit counts, route cost and objective consistent.
void insert_visit(const Instance& instance, Solution& solution, std::size_t route_index,
                  std::size_t pos, PoiId poi);
void remove_visit(const Instance& instance, Solution& solution, std::size_t route_index,
                  std::size_t pos);
void clear_route(const Instance& instance, Solution& solution, std::size_t route_index);

/// Recomputes the cached objective from visit counts.
void refresh_objective(const Instance& instance, Solution& solution);

}  // namespace otoprv
