#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace lticlust {

/// Sampled frequency response: a p x m complex matrix per angular frequency.
///
/// Frequencies are in rad/s, strictly increasing, positive, and at least two.
/// A response measured from a discrete-time system carries its sampling
/// period and may not extend past the Nyquist frequency pi / T_s.
class FrequencyResponse {
public:
    FrequencyResponse(std::vector<double> frequencies, std::vector<Eigen::MatrixXcd> values,
                      std::optional<double> sample_time = std::nullopt);

    [[nodiscard]] const std::vector<double>& frequencies() const noexcept { return frequencies_; }
    [[nodiscard]] const std::vector<Eigen::MatrixXcd>& values() const noexcept { return values_; }
    [[nodiscard]] const Eigen::MatrixXcd& value(std::size_t k) const { return values_.at(k); }
    [[nodiscard]] std::optional<double> sample_time() const noexcept { return sample_time_; }

    [[nodiscard]] std::size_t size() const noexcept { return frequencies_.size(); }
    [[nodiscard]] Eigen::Index outputs() const noexcept { return values_.front().rows(); }
    [[nodiscard]] Eigen::Index inputs() const noexcept { return values_.front().cols(); }
    [[nodiscard]] bool is_siso() const noexcept { return outputs() == 1 && inputs() == 1; }

    /// Scalar response of a SISO system at grid point k.
    [[nodiscard]] std::complex<double> siso(std::size_t k) const { return values_.at(k)(0, 0); }

    /// Pointwise G1 - G2; both responses must share an identical grid.
    friend FrequencyResponse operator-(const FrequencyResponse& lhs, const FrequencyResponse& rhs);
    /// Pointwise c * G.
    [[nodiscard]] FrequencyResponse scaled(double c) const;

private:
    std::vector<double> frequencies_;
    std::vector<Eigen::MatrixXcd> values_;
    std::optional<double> sample_time_;
};

/// `count` logarithmically spaced points from `lo` to `hi`, endpoints included.
std::vector<double> logspace_grid(double lo, double hi, std::size_t count);

/// `count` evenly spaced points from `lo` to `hi`, endpoints included.
std::vector<double> linspace_grid(double lo, double hi, std::size_t count);

}  // namespace lticlust
