#pragma once

#include "lticlust/lti.hpp"
#include "lticlust/norms.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lticlust {

enum class Metric { h2_model, hinf_model, h2_frf, hinf_frf, realization_baseline };

std::string_view to_string(Metric metric);
/// Accepts the metric names plus "baseline" for the realization distance.
Metric parse_metric(std::string_view name);

[[nodiscard]] constexpr bool is_model_metric(Metric m) noexcept {
    return m == Metric::h2_model || m == Metric::hinf_model || m == Metric::realization_baseline;
}

/// Weights of the realization-space distance.
struct RealizationWeights {
    double lambda_a = 1.0;
    double lambda_b = 1.0;
    double lambda_c = 1.0;

    void validate() const;
};

struct DistanceOptions {
    double hinf_tol = kDefaultHinfTolerance;
    RealizationWeights weights{};
    /// Grid used when FRF metrics are applied to models.
    std::optional<std::vector<double>> grid;
    /// Worker threads for matrix assembly; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Symmetric nonnegative pairwise distances with zero diagonal.
struct DistanceMatrix {
    Eigen::MatrixXd values;
    Metric metric = Metric::hinf_frf;
    std::vector<std::string> labels;
    /// Free-form provenance, e.g. the controller used for closed-loop distances.
    std::string note;

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    /// Throws InputError unless square, symmetric, zero-diagonal, nonnegative and labelled.
    void validate() const;
};

/// ||G1 - G2|| under a model or FRF metric. FRF pairs on different grids
/// are resampled onto their coarsest common grid first.
double h_distance(const System& g1, const System& g2, Metric metric, const DistanceOptions& options = {});

/// sqrt(lambda_c |C1-C2|_F^2 + lambda_a |A1-A2|_F^2 + lambda_b |B1-B2|_F^2).
/// Requires equal orders and channel counts.
double realization_distance(const StateSpaceModel& g1, const StateSpaceModel& g2,
                            const RealizationWeights& weights = {});

/// All N(N-1)/2 pairwise distances. Entries are independent and the result
/// does not depend on the thread count. Failures are rethrown as PairError
/// for the lowest failing pair.
DistanceMatrix distance_matrix(const SystemBatch& batch, Metric metric, const DistanceOptions& options = {});

/// Distance matrix of the closed loops feedback_connect(plant_i, controller).
/// Throws StabilizationError listing every member the controller fails to stabilize.
DistanceMatrix closed_loop_distance_matrix(const std::vector<StateSpaceModel>& plants,
                                           const StateSpaceModel& controller, Metric metric,
                                           const DistanceOptions& options = {},
                                           std::vector<std::string> labels = {});

}  // namespace lticlust
