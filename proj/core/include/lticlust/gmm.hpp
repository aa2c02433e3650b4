#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lticlust {

struct GmmConfig {
    double reg = 1e-6;
    double tolerance = 1e-8;
    int max_iterations = 500;
    int restarts = 5;
};

/// Per-dimension affine map x -> (x - shift) / scale.
struct Standardization {
    Eigen::VectorXd shift;
    Eigen::VectorXd scale;

    [[nodiscard]] Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

/// Gaussian mixture in standardized feature space.
struct GmmModel {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covariances;
    Standardization standardization;
    /// Penalized log-likelihood (standardized space) before each M-step and
    /// at the end; EM ascends it monotonically.
    std::vector<double> loglik_trace;
    /// Trace of every restart, the selected one included.
    std::vector<std::vector<double>> restart_traces;
    int iterations = 0;
    int selected_restart = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t components() const noexcept { return weights.size(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return standardization.shift.size(); }
    [[nodiscard]] double loglik() const { return loglik_trace.empty() ? 0.0 : loglik_trace.back(); }
};

struct SoftAssignment {
    /// N x K posterior probabilities.
    Eigen::MatrixXd responsibilities;
    std::vector<std::size_t> hard_labels;
};

/// EM fit of a K-component full-covariance mixture to the rows of `features`.
///
/// Features are standardized per dimension. Each restart seeds its means by
/// farthest-point selection starting from the extreme point along a seeded
/// random direction, with identity covariances and uniform weights; the
/// restart with the highest final log-likelihood is kept.
GmmModel gmm_fit(const Eigen::MatrixXd& features, std::size_t K, std::uint64_t seed, const GmmConfig& config = {});

/// Posterior component probabilities for raw (unstandardized) features.
SoftAssignment gmm_responsibilities(const GmmModel& model, const Eigen::MatrixXd& features);

/// Total log-likelihood of standardized rows under the model.
double gmm_loglik(const GmmModel& model, const Eigen::MatrixXd& standardized);

}  // namespace lticlust
