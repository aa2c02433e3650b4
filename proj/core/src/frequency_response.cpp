#include "lticlust/frequency_response.hpp"

#include "lticlust/error.hpp"

#include <cmath>
#include <numbers>

namespace lticlust {

FrequencyResponse::FrequencyResponse(std::vector<double> frequencies, std::vector<Eigen::MatrixXcd> values,
                                     std::optional<double> sample_time)
    : frequencies_(std::move(frequencies)), values_(std::move(values)), sample_time_(sample_time) {
    if (frequencies_.size() < 2) throw InputError("frequency response needs at least two grid points");
    if (frequencies_.size() != values_.size()) throw InputError("frequency and value counts differ");
    for (std::size_t k = 0; k < frequencies_.size(); ++k) {
        if (!(frequencies_[k] > 0.0) || !std::isfinite(frequencies_[k])) {
            throw InputError("frequencies must be positive and finite");
        }
        if (k > 0 && !(frequencies_[k] > frequencies_[k - 1])) {
            throw InputError("frequencies must be strictly increasing");
        }
    }
    const auto p = values_.front().rows();
    const auto m = values_.front().cols();
    if (p == 0 || m == 0) throw InputError("response matrices must be nonempty");
    for (const auto& v : values_) {
        if (v.rows() != p || v.cols() != m) throw InputError("response matrices must share one shape");
        if (!v.allFinite()) throw InputError("response values must be finite");
    }
    if (sample_time_) {
        if (!(*sample_time_ > 0.0)) throw InputError("sampling period must be positive");
        const double nyquist = std::numbers::pi / *sample_time_;
        if (frequencies_.back() > nyquist * (1.0 + 1e-12)) {
            throw InputError("discrete-time response extends past the Nyquist frequency");
        }
    }
}

FrequencyResponse operator-(const FrequencyResponse& lhs, const FrequencyResponse& rhs) {
    if (lhs.frequencies_ != rhs.frequencies_) throw InputError("responses are on different grids");
    if (lhs.outputs() != rhs.outputs() || lhs.inputs() != rhs.inputs()) {
        throw InputError("responses have different channel counts");
    }
    std::vector<Eigen::MatrixXcd> diff(lhs.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = lhs.values_[k] - rhs.values_[k];
    return {lhs.frequencies_, std::move(diff), lhs.sample_time_};
}

FrequencyResponse FrequencyResponse::scaled(double c) const {
    std::vector<Eigen::MatrixXcd> out(values_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * values_[k];
    return {frequencies_, std::move(out), sample_time_};
}

std::vector<double> logspace_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InputError("logspace needs 0 < lo < hi and count >= 2");
    std::vector<double> grid(count);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    const auto last = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) / last);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> linspace_grid(double lo, double hi, std::size_t count) {
    if (!(hi > lo) || count < 2) throw InputError("linspace needs lo < hi and count >= 2");
    std::vector<double> grid(count);
    const auto last = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) grid[k] = lo + (hi - lo) * static_cast<double>(k) / last;
    grid.back() = hi;
    return grid;
}

}  // namespace lticlust
