#include "lticlust/kmedoids.hpp"

#include "lticlust/error.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace lticlust {

namespace {

constexpr int kMaxAlternations = 100;
constexpr int kMaxSwaps = 100;

// Nearest medoid per item; medoids always own their cluster, other ties go
// to the lowest cluster index.
std::vector<std::size_t> assign(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
    const std::size_t N = dm.size();
    std::vector<std::size_t> out(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        const auto own = std::find(medoids.begin(), medoids.end(), i);
        if (own != medoids.end()) {
            out[i] = static_cast<std::size_t>(own - medoids.begin());
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < medoids.size(); ++c) {
            const double d = dm(i, medoids[c]);
            if (d < best) {
                best = d;
                out[i] = c;
            }
        }
    }
    return out;
}

double nearest_cost(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
    return clustering_cost(dm, assign(dm, medoids), medoids);
}

// Greedy BUILD step: the non-medoid whose addition minimizes the total cost.
std::size_t best_addition(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
    const std::size_t N = dm.size();
    std::vector<double> nearest(N, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < N; ++i) {
        for (const auto m : medoids) nearest[i] = std::min(nearest[i], dm(i, m));
    }
    std::size_t best_j = N;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < N; ++j) {
        if (std::find(medoids.begin(), medoids.end(), j) != medoids.end()) continue;
        double cost = 0.0;
        for (std::size_t i = 0; i < N; ++i) cost += std::min(nearest[i], dm(i, j));
        if (cost < best_cost) {
            best_cost = cost;
            best_j = j;
        }
    }
    return best_j;
}

void check(const DistanceMatrix& dm) {
    if (dm.values.rows() != dm.values.cols()) throw InputError("distance matrix must be square");
    if (dm.size() == 0) throw InputError("distance matrix is empty");
}

}  // namespace

double clustering_cost(const DistanceMatrix& dm, const std::vector<std::size_t>& assignments,
                       const std::vector<std::size_t>& medoids) {
    double cost = 0.0;
    for (std::size_t i = 0; i < assignments.size(); ++i) cost += dm(i, medoids.at(assignments[i]));
    return cost;
}

HardClustering kmedoids_from(const DistanceMatrix& dm, std::vector<std::size_t> medoids, std::uint64_t seed) {
    check(dm);
    const std::size_t N = dm.size();
    const std::size_t k = medoids.size();
    if (k < 1 || k > N) throw InputError("k must satisfy 1 <= k <= N");
    for (std::size_t c = 0; c < k; ++c) {
        if (medoids[c] >= N) throw InputError("medoid index out of range");
        if (std::find(medoids.begin(), medoids.begin() + static_cast<std::ptrdiff_t>(c), medoids[c]) !=
            medoids.begin() + static_cast<std::ptrdiff_t>(c)) {
            throw InputError("medoids must be distinct");
        }
    }

    HardClustering out;
    out.seed = seed;
    auto assignments = assign(dm, medoids);

    // Alternate assignment and per-cluster medoid update.
    for (int it = 0; it < kMaxAlternations; ++it) {
        ++out.iterations;
        for (std::size_t c = 0; c < k; ++c) {
            auto intra = [&](std::size_t j) {
                double s = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    if (assignments[i] == c) s += dm(i, j);
                }
                return s;
            };
            double best = intra(medoids[c]);
            for (std::size_t j = 0; j < N; ++j) {
                if (assignments[j] != c || j == medoids[c]) continue;
                const double s = intra(j);
                if (s < best) {
                    best = s;
                    medoids[c] = j;
                }
            }
        }
        auto next = assign(dm, medoids);
        const bool stable = next == assignments;
        assignments = std::move(next);
        if (stable) break;
    }

    // Swap pass: best single medoid/non-medoid exchange while it lowers the cost.
    double cost = clustering_cost(dm, assignments, medoids);
    for (int swaps = 0; swaps < kMaxSwaps; ++swaps) {
        double best_cost = cost;
        std::size_t best_c = k;
        std::size_t best_o = N;
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t o = 0; o < N; ++o) {
                if (std::find(medoids.begin(), medoids.end(), o) != medoids.end()) continue;
                auto trial = medoids;
                trial[c] = o;
                const double tc = nearest_cost(dm, trial);
                if (tc < best_cost - 1e-12 * std::max(1.0, std::abs(cost))) {
                    best_cost = tc;
                    best_c = c;
                    best_o = o;
                }
            }
        }
        if (best_c == k) break;
        ++out.iterations;
        medoids[best_c] = best_o;
        assignments = assign(dm, medoids);
        cost = clustering_cost(dm, assignments, medoids);
    }

    out.assignments = std::move(assignments);
    out.medoids = std::move(medoids);
    out.total_cost = clustering_cost(dm, out.assignments, out.medoids);
    return out;
}

HardClustering kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed) {
    check(dm);
    const std::size_t N = dm.size();
    if (k < 1 || k > N) throw InputError("k must satisfy 1 <= k <= N");
    // One greedy start per choice of first medoid; the lowest cost wins, ties
    // to the earliest start. The plain greedy start is among them.
    std::set<std::vector<std::size_t>> tried;
    HardClustering best;
    best.total_cost = std::numeric_limits<double>::infinity();
    for (std::size_t first = 0; first < N; ++first) {
        std::vector<std::size_t> medoids{first};
        while (medoids.size() < k) medoids.push_back(best_addition(dm, medoids));
        auto key = medoids;
        std::sort(key.begin(), key.end());
        if (!tried.insert(std::move(key)).second) continue;
        auto candidate = kmedoids_from(dm, std::move(medoids), seed);
        if (candidate.total_cost < best.total_cost) best = std::move(candidate);
    }
    return best;
}

ElbowResult elbow_select_k(const DistanceMatrix& dm, std::size_t k_max, std::uint64_t seed) {
    check(dm);
    const std::size_t N = dm.size();
    if (k_max < 2 || k_max + 1 > N) throw InputError("k_max must satisfy 2 <= k_max <= N - 1");

    ElbowResult out;
    std::vector<double> costs;
    HardClustering current = kmedoids(dm, 1, seed);
    for (std::size_t k = 1;; ++k) {
        costs.push_back(current.total_cost);
        if (k <= k_max) out.clusterings.push_back(current);
        if (k == k_max + 1) break;
        auto medoids = current.medoids;
        medoids.push_back(best_addition(dm, medoids));
        current = kmedoids_from(dm, std::move(medoids), seed);
        auto fresh = kmedoids(dm, k + 1, seed);
        if (fresh.total_cost < current.total_cost) current = std::move(fresh);
    }
    out.cost_curve.assign(costs.begin(), costs.begin() + static_cast<std::ptrdiff_t>(k_max));

    const double base = costs.front();
    std::vector<double> normalized(costs.size(), 0.0);
    if (base > 0.0) {
        for (std::size_t i = 0; i < costs.size(); ++i) normalized[i] = costs[i] / base;
    }
    // normalized[i] is the cost at k = i + 1.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> second(k_max + 1, 0.0);
    for (std::size_t k = 2; k <= k_max; ++k) {
        second[k] = normalized[k - 2] - 2.0 * normalized[k - 1] + normalized[k];
        best = std::max(best, second[k]);
    }
    out.second_difference.assign(second.begin() + 1, second.end());
    out.k_star = 2;
    for (std::size_t k = 2; k <= k_max; ++k) {
        if (second[k] >= best - 1e-12) {
            out.k_star = k;
            break;
        }
    }
    return out;
}

}  // namespace lticlust
