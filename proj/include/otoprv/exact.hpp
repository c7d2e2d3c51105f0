#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "otoprv/model.hpp"

namespace otoprv {

/// Refusal of an instance larger than the exhaustive solvers accept.
class SizeGuardError : public ModelError {
public:
    using ModelError::ModelError;
};

struct ExactLimits {
    std::size_t max_pois = 12;
    bool force = false;
};

/// Every feasible simple sequence of POIs (finite legs, cost within budget), starting
/// with the empty route.
std::vector<Route> enumerate_routes(const Instance& instance, const ExactLimits& limits = {});

/// Cheapest visiting order of every POI subset (bit i = POI i); entries hold
/// kUnreachable cost for subsets no open path covers.
struct SubsetCatalogue {
    std::size_t pois = 0;
    std::vector<double> cost;
    std::vector<PoiId> last;
    std::vector<PoiId> previous;

    Route route(std::size_t mask) const;
};

SubsetCatalogue subset_catalogue(const Instance& instance, const ExactLimits& limits = {});

/// Globally optimal fleet of routes. Objective depends only on the visit-count vector,
/// so layers of reachable count vectors are expanded route by route over the catalogue
/// of maximal feasible subsets.
Solution exact_solve(const Instance& instance, const ExactLimits& limits = {});

/// Feasible route maximizing the sum of `gains` over its visits.
Route best_single_route(const Instance& instance, std::span<const double> gains,
                        const ExactLimits& limits = {});

}  // namespace otoprv
