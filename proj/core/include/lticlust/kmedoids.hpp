#pragma once

#include "lticlust/distances.hpp"

#include <cstdint>
#include <vector>

namespace lticlust {

struct HardClustering {
    /// Cluster index in [0, k) per item.
    std::vector<std::size_t> assignments;
    /// Item index of each cluster's medoid.
    std::vector<std::size_t> medoids;
    double total_cost = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t k() const noexcept { return medoids.size(); }
};

/// k-medoids on a precomputed distance matrix.
///
/// Greedy BUILD initialization (each further medoid minimizes the resulting
/// total cost), then alternation of nearest-medoid assignment and per-cluster
/// medoid update until the assignment is stable, then a PAM swap pass until no
/// swap improves the cost. BUILD is started from every possible first medoid
/// and the cheapest result is kept, so the outcome is never worse than the
/// classic start from the total-distance minimizer. Ties resolve to the lowest
/// index. `seed` is recorded only.
HardClustering kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed = 0);

/// Same refinement started from the given medoids (k = medoids.size()).
HardClustering kmedoids_from(const DistanceMatrix& dm, std::vector<std::size_t> medoids, std::uint64_t seed = 0);

/// Sum over items of the distance to their assigned medoid.
double clustering_cost(const DistanceMatrix& dm, const std::vector<std::size_t>& assignments,
                       const std::vector<std::size_t>& medoids);

struct ElbowResult {
    std::size_t k_star = 0;
    /// total_cost for k = 1..k_max (index 0 holds k = 1).
    std::vector<double> cost_curve;
    /// Normalized second difference per k (same indexing; 0 at k = 1).
    std::vector<double> second_difference;
    /// Clustering for each k in the curve.
    std::vector<HardClustering> clusterings;
};

/// Runs nested k-medoids for k = 1..k_max (each warm-started from the
/// previous solution plus one greedy medoid, replaced by a fresh kmedoids run
/// when that is cheaper, so the cost curve never rises) and picks k maximizing the
/// second difference of the cost curve normalized by the k = 1 cost.
/// Requires 2 <= k_max <= N - 1; the k_max + 1 cost is used for the last
/// second difference.
ElbowResult elbow_select_k(const DistanceMatrix& dm, std::size_t k_max, std::uint64_t seed = 0);

}  // namespace lticlust
