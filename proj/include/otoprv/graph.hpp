#pragma once

#include <optional>
#include <span>
#include <vector>

#include "otoprv/model.hpp"

namespace otoprv {

/// Straight-line distances between planar points.
TravelMatrix euclidean_matrix(std::span<const Point> points);

struct Edge {
    PoiId from = 0;
    PoiId to = 0;
    double cost = 0.0;
    bool directed = false;
};

/// Listed arcs get their cost, undirected edges fill both directions and every other
/// off-diagonal pair is unreachable. Throws ModelError on out-of-range endpoints,
/// negative costs or the same arc listed twice with different costs.
TravelMatrix from_edge_list(std::size_t n, std::span<const Edge> edges);

/// All-pairs shortest paths (Dijkstra from every node). Pairs stay unreachable only
/// when disconnected.
TravelMatrix metric_closure(const TravelMatrix& matrix);

struct RewardArc {
    PoiId from = 0;
    PoiId to = 0;
    double weight = 0.0;
};

enum class OriginalArcPolicy { Keep, Remove };

struct AugmentedNetwork {
    TravelMatrix travel;
    std::vector<double> weights;
    std::vector<std::optional<Point>> positions;
    // arc_nodes[r] is the artificial node carrying reward arc r.
    std::vector<PoiId> arc_nodes;
};

/// Splits every reward arc (i,j) with a midpoint node k, t_ik = t_kj = t_ij / 2, and moves
/// the arc weight onto k. When the reverse arc (j,i) exists it is split through the same
/// node, so the reward is collectable in both directions. Original nodes get weight 0.
/// Throws ModelError naming the arc if it is absent from the network.
AugmentedNetwork augment_arcs(const TravelMatrix& network, std::span<const RewardArc> reward_arcs,
                              OriginalArcPolicy policy = OriginalArcPolicy::Keep,
                              std::span<const std::optional<Point>> positions = {});

/// Instance over the augmented graph; pois carry the augmented weights and positions.
Instance make_instance(const AugmentedNetwork& network, int fleet_size, double budget, double beta);

}  // namespace otoprv
