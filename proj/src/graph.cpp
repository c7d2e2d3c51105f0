#include "otoprv/graph.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

namespace otoprv {

TravelMatrix euclidean_matrix(std::span<const Point> points) {
    TravelMatrix m(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
            m.set(i, j, d);
            m.set(j, i, d);
        }
    return m;
}

TravelMatrix from_edge_list(std::size_t n, std::span<const Edge> edges) {
    TravelMatrix m(n);
    const auto put = [&](PoiId a, PoiId b, double cost) {
        const auto i = static_cast<std::size_t>(a);
        const auto j = static_cast<std::size_t>(b);
        if (i == j) {
            if (cost != 0.0)
                throw ModelError("self-loop on node " + std::to_string(a) + " must cost 0");
            return;
        }
        if (m.reachable(i, j) && m(i, j) != cost)
            throw ModelError("arc (" + std::to_string(a) + "," + std::to_string(b) +
                             ") listed with conflicting costs");
        m.set(i, j, cost);
    };
    for (const Edge& e : edges) {
        if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n ||
            static_cast<std::size_t>(e.to) >= n)
            throw ModelError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                             ") references a node outside 0.." + std::to_string(n));
        if (!(e.cost >= 0.0) || !std::isfinite(e.cost))
            throw ModelError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                             ") has a negative or non-finite cost");
        put(e.from, e.to, e.cost);
        if (!e.directed) put(e.to, e.from, e.cost);
    }
    return m;
}

TravelMatrix metric_closure(const TravelMatrix& matrix) {
    const std::size_t n = matrix.size();
    TravelMatrix out(n);
    using Label = std::pair<double, std::size_t>;
    std::vector<double> dist(n);
    std::vector<char> done(n);
    for (std::size_t src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(done.begin(), done.end(), 0);
        std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
        dist[src] = 0.0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (done[u]) continue;
            done[u] = 1;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || !matrix.reachable(u, v)) continue;
                const double nd = d + matrix(u, v);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    heap.emplace(nd, v);
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) out.set(src, v, dist[v]);
    }
    return out;
}

AugmentedNetwork augment_arcs(const TravelMatrix& network, std::span<const RewardArc> reward_arcs,
                              OriginalArcPolicy policy,
                              std::span<const std::optional<Point>> positions) {
    const std::size_t n = network.size();
    const std::size_t total = n + reward_arcs.size();
    AugmentedNetwork out;
    out.travel = TravelMatrix(total);
    out.weights.assign(total, 0.0);
    out.positions.assign(total, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.travel.set(i, j, network(i, j));
        if (i < positions.size()) out.positions[i] = positions[i];
    }
    for (std::size_t r = 0; r < reward_arcs.size(); ++r) {
        const RewardArc& arc = reward_arcs[r];
        const auto i = static_cast<std::size_t>(arc.from);
        const auto j = static_cast<std::size_t>(arc.to);
        if (arc.from < 0 || arc.to < 0 || i >= n || j >= n || i == j || !network.reachable(i, j))
            throw ModelError("reward arc (" + std::to_string(arc.from) + "," +
                             std::to_string(arc.to) + ") is not an arc of the network");
        if (!(arc.weight >= 0.0) || !std::isfinite(arc.weight))
            throw ModelError("reward arc (" + std::to_string(arc.from) + "," +
                             std::to_string(arc.to) + ") has a negative or non-finite weight");
        const std::size_t k = n + r;
        const double half = network(i, j) / 2.0;
        out.travel.set(i, k, half);
        out.travel.set(k, j, half);
        if (network.reachable(j, i)) {
            const double back = network(j, i) / 2.0;
            out.travel.set(j, k, back);
            out.travel.set(k, i, back);
        }
        if (policy == OriginalArcPolicy::Remove) {
            out.travel.set(i, j, kUnreachable);
            out.travel.set(j, i, kUnreachable);
        }
        out.weights[k] = arc.weight;
        if (out.positions[i] && out.positions[j])
            out.positions[k] = Point{(out.positions[i]->x + out.positions[j]->x) / 2.0,
                                     (out.positions[i]->y + out.positions[j]->y) / 2.0};
        out.arc_nodes.push_back(static_cast<PoiId>(k));
    }
    return out;
}

Instance make_instance(const AugmentedNetwork& network, int fleet_size, double budget, double beta) {
    std::vector<Poi> pois(network.weights.size());
    for (std::size_t i = 0; i < pois.size(); ++i)
        pois[i] = Poi{static_cast<PoiId>(i), network.weights[i], network.positions[i]};
    return Instance(std::move(pois), network.travel, fleet_size, budget, beta);
}

}  // namespace otoprv
