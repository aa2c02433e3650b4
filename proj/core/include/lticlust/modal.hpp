#pragma once

#include "lticlust/frequency_response.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace lticlust {

/// One term b / (s^2 + 2 zeta omega_n s + omega_n^2) of a sum-of-modes model.
struct ModalMode {
    double omega_n = 0.0;  // rad/s
    double zeta = 0.0;
    double b = 0.0;
};

struct CircleFit {
    std::complex<double> center;
    double radius = 0.0;
    /// RMS distance of the points to the fitted circle.
    double residual = 0.0;
    /// Index range [first, last] of the points used (inclusive).
    std::size_t first = 0;
    std::size_t last = 0;

    [[nodiscard]] std::size_t window_size() const noexcept { return last - first + 1; }
};

struct ModalConfig {
    /// Peak must exceed the median magnitude in the window by this much.
    double prominence_db = 6.0;
    /// Half-width of the median window, in decades.
    double median_half_window_decades = 0.5;
    /// Minimum distance between accepted peaks, in decades.
    double min_separation_decades = 0.02;
    /// Minimum number of points in a circle-fit window.
    std::size_t min_window = 7;
    /// Relative circle-fit residual (residual / R) above which a mode is flagged.
    double residual_warn = 1e-2;
    /// Passes in which every mode is refitted with the other fitted modes and
    /// the rigid body subtracted; 0 keeps the plain per-peak fits.
    int refinement_passes = 2;
};

/// Peaks in ascending order of frequency.
std::vector<std::size_t> pick_peaks(const FrequencyResponse& frf, const ModalConfig& config = {});

/// Algebraic least-squares circle through x^2 + y^2 + a x + b y + c = 0.
/// Needs at least 7 points that are not collinear.
CircleFit circle_fit(std::span<const std::complex<double>> points);

struct ModeEstimate {
    ModalMode mode;
    CircleFit fit;
    /// Midpoint frequency of the pair with the largest sweep rate d theta / d(w^2).
    double sweep_frequency = 0.0;
    double sweep_rate = 0.0;
    /// Structural loss factor from the circle geometry.
    double loss_factor = 0.0;
    bool residual_warning = false;
};

/// SDOF circle fit around one peak of a SISO response.
///
/// The window is the half-power band around the peak, widened to at least
/// `min_window` points. With theta the unwrapped angle about the fitted
/// center: gamma_max = max dtheta/d(w^2), eta = 2 / (w^2 gamma_max),
/// b = 2 R w^2 eta, zeta = eta / 2. The natural frequency is the sweep
/// frequency corrected by 1 / sqrt(1 - 2 zeta^2), where the maximum sweep
/// rate of a viscously damped receptance sits.
ModeEstimate extract_mode(const FrequencyResponse& frf, std::size_t peak_index, const ModalConfig& config = {});

/// Modal summary phi = [b0, b_1..b_n, zeta_1..zeta_n, omega_1..omega_n].
struct ModalFeatureVector {
    double b0 = 0.0;
    std::vector<ModalMode> modes;
    /// Set when no rigid-body (-40 dB/decade) region was found; b0 is 0 then.
    bool rigid_body_missing = false;
    /// Modes whose circle fit was flagged.
    std::vector<std::size_t> flagged_modes;

    [[nodiscard]] std::vector<double> flattened() const;
    [[nodiscard]] std::size_t mode_count() const noexcept { return modes.size(); }
};

/// b0 from the median of |G| w^2 over the lowest decade, then one mode per
/// picked peak, sorted by natural frequency. Modes and b0 are then refined
/// for `config.refinement_passes` passes.
ModalFeatureVector extract_features(const FrequencyResponse& frf, const ModalConfig& config = {});

/// Column names matching ModalFeatureVector::flattened for n modes.
std::vector<std::string> feature_names(std::size_t mode_count);

}  // namespace lticlust
