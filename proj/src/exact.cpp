#include "otoprv/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace otoprv {

namespace {

// Hard ceiling for the subset tables regardless of `force`.
constexpr std::size_t kSubsetCeiling = 20;

void check_size(const Instance& instance, const ExactLimits& limits) {
    if (instance.size() > limits.max_pois && !limits.force)
        throw SizeGuardError("exhaustive search refused: instance has " +
                             std::to_string(instance.size()) + " POIs, bound is " +
                             std::to_string(limits.max_pois) + " (pass force to override)");
}

void extend(const Instance& instance, std::vector<PoiId>& path, double cost,
            std::vector<char>& used, std::vector<Route>& out) {
    const auto n = static_cast<PoiId>(instance.size());
    for (PoiId next = 0; next < n; ++next) {
        if (used[static_cast<std::size_t>(next)]) continue;
        double total = cost;
        if (!path.empty()) {
            const double leg = instance.cost(path.back(), next);
            if (leg == kUnreachable) continue;
            total += leg;
        }
        if (total > instance.budget() + kBudgetTolerance) continue;
        path.push_back(next);
        used[static_cast<std::size_t>(next)] = 1;
        out.push_back(Route{path, total});
        extend(instance, path, total, used, out);
        used[static_cast<std::size_t>(next)] = 0;
        path.pop_back();
    }
}

}  // namespace

std::vector<Route> enumerate_routes(const Instance& instance, const ExactLimits& limits) {
    check_size(instance, limits);
    std::vector<Route> out{Route{}};
    std::vector<PoiId> path;
    std::vector<char> used(instance.size(), 0);
    extend(instance, path, 0.0, used, out);
    for (Route& r : out) r.cost = route_cost(instance, r.visits);
    return out;
}

Route SubsetCatalogue::route(std::size_t mask) const {
    Route r;
    if (mask == 0 || cost[mask] == kUnreachable) return r;
    std::size_t m = mask;
    PoiId at = last[m];
    while (m != 0) {
        r.visits.push_back(at);
        const PoiId prev = previous[m * pois + static_cast<std::size_t>(at)];
        m &= ~(std::size_t{1} << at);
        at = prev;
    }
    std::reverse(r.visits.begin(), r.visits.end());
    r.cost = cost[mask];
    return r;
}

SubsetCatalogue subset_catalogue(const Instance& instance, const ExactLimits& limits) {
    check_size(instance, limits);
    const std::size_t n = instance.size();
    if (n > kSubsetCeiling)
        throw SizeGuardError("subset tables support at most " + std::to_string(kSubsetCeiling) +
                             " POIs");
    const std::size_t subsets = std::size_t{1} << n;
    // path[mask][end]: cheapest open path over `mask` ending at `end`.
    std::vector<double> path(subsets * n, kUnreachable);
    SubsetCatalogue cat;
    cat.cost.assign(subsets, kUnreachable);
    cat.last.assign(subsets, -1);
    cat.pois = n;
    cat.previous.assign(subsets * n, -1);
    cat.cost[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) path[(std::size_t{1} << i) * n + i] = 0.0;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t end = 0; end < n; ++end) {
            const double c = path[mask * n + end];
            if (c == kUnreachable) continue;
            if (c < cat.cost[mask]) {
                cat.cost[mask] = c;
                cat.last[mask] = static_cast<PoiId>(end);
            }
            for (std::size_t next = 0; next < n; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const double leg = instance.travel()(end, next);
                if (leg == kUnreachable) continue;
                const double nc = c + leg;
                if (nc > instance.budget() + kBudgetTolerance) continue;
                const std::size_t nm = mask | (std::size_t{1} << next);
                if (nc < path[nm * n + next]) {
                    path[nm * n + next] = nc;
                    cat.previous[nm * n + next] = static_cast<PoiId>(end);
                }
            }
        }
    }
    for (std::size_t mask = 1; mask < subsets; ++mask)
        if (cat.cost[mask] > instance.budget() + kBudgetTolerance) cat.cost[mask] = kUnreachable;
    return cat;
}

Solution exact_solve(const Instance& instance, const ExactLimits& limits) {
    const SubsetCatalogue cat = subset_catalogue(instance, limits);
    const std::size_t n = instance.size();
    const std::size_t subsets = cat.cost.size();

    // A feasible subset with a feasible one-element extension is dominated: the objective
    // is monotone in every visit count.
    std::vector<std::size_t> maximal;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        if (cat.cost[mask] == kUnreachable) continue;
        bool dominated = false;
        for (std::size_t i = 0; i < n && !dominated; ++i)
            if (!(mask & (std::size_t{1} << i)) &&
                cat.cost[mask | (std::size_t{1} << i)] != kUnreachable)
                dominated = true;
        if (!dominated) maximal.push_back(mask);
    }
    const int fleet = instance.fleet_size();
    if (maximal.empty()) return evaluate(instance, std::vector<Route>(static_cast<std::size_t>(fleet)));

    const unsigned bits = static_cast<unsigned>(std::bit_width(static_cast<unsigned>(fleet)));
    if (n * bits > 64)
        throw SizeGuardError("visit-count vector of " + std::to_string(n) + " POIs with fleet " +
                             std::to_string(fleet) + " does not fit the exact state encoding");
    // Increment of the packed count vector for each catalogue subset.
    std::vector<std::uint64_t> step(maximal.size(), 0);
    for (std::size_t c = 0; c < maximal.size(); ++c)
        for (std::size_t i = 0; i < n; ++i)
            if (maximal[c] & (std::size_t{1} << i)) step[c] += std::uint64_t{1} << (i * bits);

    struct Node {
        std::uint64_t state;
        std::size_t parent;
        std::size_t subset;
    };
    std::vector<std::vector<Node>> layers(static_cast<std::size_t>(fleet) + 1);
    layers[0].push_back({0, 0, 0});
    for (int layer = 1; layer <= fleet; ++layer) {
        const auto& prev = layers[static_cast<std::size_t>(layer - 1)];
        auto& next = layers[static_cast<std::size_t>(layer)];
        std::unordered_map<std::uint64_t, std::size_t> seen;
        seen.reserve(prev.size() * 4);
        for (std::size_t p = 0; p < prev.size(); ++p)
            for (std::size_t c = 0; c < maximal.size(); ++c) {
                const std::uint64_t s = prev[p].state + step[c];
                if (seen.emplace(s, next.size()).second) next.push_back({s, p, c});
            }
    }

    const std::uint64_t field = (std::uint64_t{1} << bits) - 1;
    const auto& last = layers.back();
    std::size_t best = 0;
    double best_value = -1.0;
    std::vector<int> counts(n);
    for (std::size_t s = 0; s < last.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i)
            counts[i] = static_cast<int>((last[s].state >> (i * bits)) & field);
        const double value = objective_of(instance, counts);
        if (value > best_value) {
            best_value = value;
            best = s;
        }
    }
    std::vector<Route> routes;
    std::size_t at = best;
    for (int layer = fleet; layer >= 1; --layer) {
        const Node& node = layers[static_cast<std::size_t>(layer)][at];
        routes.push_back(cat.route(maximal[node.subset]));
        at = node.parent;
    }
    std::reverse(routes.begin(), routes.end());
    return evaluate(instance, std::move(routes));
}

Route best_single_route(const Instance& instance, std::span<const double> gains,
                        const ExactLimits& limits) {
    const SubsetCatalogue cat = subset_catalogue(instance, limits);
    std::size_t best = 0;
    double best_gain = 0.0;
    for (std::size_t mask = 1; mask < cat.cost.size(); ++mask) {
        if (cat.cost[mask] == kUnreachable) continue;
        double g = 0.0;
        for (std::size_t i = 0; i < instance.size(); ++i)
            if (mask & (std::size_t{1} << i)) g += gains[i];
        if (g > best_gain) {
            best_gain = g;
            best = mask;
        }
    }
    return cat.route(best);
}

}  // namespace otoprv
