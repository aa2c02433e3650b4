#pragma once

#include "lticlust/frequency_response.hpp"
#include "lticlust/state_space.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lticlust {

/// Default margin for the stability predicate.
inline constexpr double kStabilityMargin = 1e-10;

/// Continuous: every eigenvalue of A has Re < -margin. Discrete: every
/// eigenvalue has modulus < 1 - margin. Order-zero systems are stable.
bool is_asymptotically_stable(const StateSpaceModel& sys, double margin = kStabilityMargin);

/// Realization of G1 - G2: diag(A1, A2), [B1; B2], [C1, -C2], D1 - D2.
StateSpaceModel difference_system(const StateSpaceModel& g1, const StateSpaceModel& g2);

/// Realization of (1/N) * sum G_i. Its order is the sum of member orders.
StateSpaceModel mean_system(std::span<const StateSpaceModel> batch);

/// Closed loop r -> y under unity negative feedback with the controller in
/// the feedback path: y = (I + G K)^-1 G r. Throws NumericalError when
/// I + D_plant D_ctrl is singular.
StateSpaceModel feedback_connect(const StateSpaceModel& plant, const StateSpaceModel& controller);

/// C (sigma I - A)^-1 B + D with sigma = j w (continuous) or e^{j w T_s}
/// (discrete). Throws SingularResolventError naming the first frequency at
/// which the resolvent is singular.
FrequencyResponse evaluate_frf(const StateSpaceModel& sys, const std::vector<double>& frequencies);

/// Linear interpolation of real and imaginary parts onto `grid`. The grid
/// must lie inside the range of the source grid.
FrequencyResponse resample_frf(const FrequencyResponse& frf, const std::vector<double>& grid);

using System = std::variant<StateSpaceModel, FrequencyResponse>;

/// Homogeneous-channel collection of systems with per-item labels.
struct SystemBatch {
    std::vector<System> items;
    std::vector<std::string> labels;

    [[nodiscard]] std::size_t size() const noexcept { return items.size(); }
    [[nodiscard]] bool all_models() const;
    [[nodiscard]] bool all_frfs() const;
    /// Checks shared (p, m) and label count; generates labels if absent.
    void validate();
};

/// Grid shared by the FRF members of a batch: the members' own grid if they
/// all agree, otherwise the coarsest member grid clipped to the common range.
/// Returns nullopt when the batch has no FRF members.
std::optional<std::vector<double>> common_frf_grid(const SystemBatch& batch);

/// Every member as an FRF on one grid. Models are evaluated, FRF members are
/// resampled when their grid differs. `grid` overrides the automatic choice;
/// pure model batches without a grid use `default_model_grid`.
std::vector<FrequencyResponse> to_common_frf(const SystemBatch& batch,
                                             const std::optional<std::vector<double>>& grid = {});

/// 1000 log-spaced points from a decade below the slowest pole to a decade
/// above the fastest, over all models given.
std::vector<double> default_model_grid(std::span<const StateSpaceModel> models);

}  // namespace lticlust
