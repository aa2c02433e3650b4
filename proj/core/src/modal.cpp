#include "lticlust/modal.hpp"

#include "lticlust/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace lticlust {

namespace {

void require_siso(const FrequencyResponse& frf, const char* what) {
    if (!frf.is_siso()) throw InputError(std::string(what) + ": response must be SISO");
}

double median(std::vector<double> v) {
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<double> magnitudes(const FrequencyResponse& frf) {
    std::vector<double> m(frf.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::abs(frf.siso(k));
    return m;
}

// Half-power band around `peak`, not crossing a valley, at least `min_window` wide.
std::pair<std::size_t, std::size_t> half_power_window(const std::vector<double>& m, std::size_t peak,
                                                      std::size_t min_window) {
    const std::size_t N = m.size();
    if (N < min_window) throw InputError("extract_mode: response has fewer points than the minimum window");
    const double threshold = m[peak] / std::numbers::sqrt2;
    std::size_t lo = peak;
    std::size_t hi = peak;
    while (lo > 0 && m[lo - 1] >= threshold && m[lo - 1] <= m[lo]) --lo;
    while (hi + 1 < N && m[hi + 1] >= threshold && m[hi + 1] <= m[hi]) ++hi;
    bool left = true;
    while (hi - lo + 1 < min_window) {
        if ((left && lo > 0) || hi + 1 >= N) {
            --lo;
        } else {
            ++hi;
        }
        left = !left;
    }
    return {lo, hi};
}

std::complex<double> mode_response(const ModalMode& m, double w) {
    return m.b / std::complex<double>(m.omega_n * m.omega_n - w * w, 2.0 * m.zeta * m.omega_n * w);
}

std::size_t first_window_index(const std::vector<ModeEstimate>& estimates, std::size_t size) {
    std::size_t limit = size;
    for (const auto& e : estimates) limit = std::min(limit, e.fit.first);
    return limit;
}

// Median of |G| w^2 over the lowest decade below `limit`, provided the
// response falls at about -40 dB/decade there.
std::optional<double> rigid_body_constant(const std::vector<double>& w, const std::vector<std::complex<double>>& g,
                                          std::size_t limit) {
    std::vector<double> lx;
    std::vector<double> ly;
    std::vector<double> asymptote;
    for (std::size_t k = 0; k < limit && w[k] <= 10.0 * w.front(); ++k) {
        const double mag = std::abs(g[k]);
        if (!(mag > 0.0)) continue;
        lx.push_back(std::log10(w[k]));
        ly.push_back(std::log10(mag));
        asymptote.push_back(mag * w[k] * w[k]);
    }
    if (lx.size() < 3) return std::nullopt;
    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) return std::nullopt;
    const double slope = (n * sxy - sx * sy) / denom;
    if (!(slope > -2.5 && slope < -1.5)) return std::nullopt;
    return median(std::move(asymptote));
}

}  // namespace

std::vector<std::size_t> pick_peaks(const FrequencyResponse& frf, const ModalConfig& config) {
    require_siso(frf, "pick_peaks");
    const std::size_t N = frf.size();
    if (N < 20) throw InputError("pick_peaks: need at least 20 grid points");
    const auto m = magnitudes(frf);
    std::vector<double> lf(N);
    for (std::size_t k = 0; k < N; ++k) lf[k] = std::log10(frf.frequencies()[k]);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        if (!(m[i] > m[i - 1] && m[i] >= m[i + 1])) continue;
        std::vector<double> window;
        for (std::size_t j = 0; j < N; ++j) {
            if (std::abs(lf[j] - lf[i]) <= config.median_half_window_decades) window.push_back(m[j]);
        }
        const double med = median(std::move(window));
        if (!(med > 0.0)) continue;
        if (20.0 * std::log10(m[i] / med) >= config.prominence_db) candidates.push_back(i);
    }

    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });
    std::vector<std::size_t> kept;
    for (const auto c : candidates) {
        const bool separated = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
            return std::abs(lf[k] - lf[c]) >= config.min_separation_decades;
        });
        if (separated) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

CircleFit circle_fit(std::span<const std::complex<double>> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 7) throw InputError("circle_fit: need at least 7 points");

    // Center and scale the data for conditioning.
    std::complex<double> mean{0.0, 0.0};
    for (const auto& p : points) mean += p;
    mean /= static_cast<double>(n);
    double scale = 0.0;
    for (const auto& p : points) scale += std::norm(p - mean);
    scale = std::sqrt(scale / static_cast<double>(n));
    if (!(scale > 0.0)) throw NumericalError("circle_fit: points are coincident");

    Eigen::MatrixXd M(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto q = (points[static_cast<std::size_t>(i)] - mean) / scale;
        M(i, 0) = q.real();
        M(i, 1) = q.imag();
        M(i, 2) = 1.0;
        rhs(i) = -std::norm(q);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(2) <= 1e-9 * sv(0)) throw NumericalError("circle_fit: points are collinear");
    const Eigen::Vector3d abc = svd.solve(rhs);
    const std::complex<double> c_unit{-abc(0) / 2.0, -abc(1) / 2.0};
    const double r2 = std::norm(c_unit) - abc(2);
    if (!(r2 > 0.0)) throw NumericalError("circle_fit: degenerate fit");

    CircleFit fit;
    fit.center = mean + scale * c_unit;
    fit.radius = scale * std::sqrt(r2);
    double ss = 0.0;
    for (const auto& p : points) {
        const double d = std::abs(p - fit.center) - fit.radius;
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    fit.first = 0;
    fit.last = points.size() - 1;
    return fit;
}

ModeEstimate extract_mode(const FrequencyResponse& frf, std::size_t peak_index, const ModalConfig& config) {
    require_siso(frf, "extract_mode");
    if (peak_index >= frf.size()) throw InputError("extract_mode: peak index out of range");
    if (config.min_window < 7) throw InputError("extract_mode: window must hold at least 7 points");
    const auto m = magnitudes(frf);
    const auto [lo, hi] = half_power_window(m, peak_index, config.min_window);

    std::vector<std::complex<double>> pts;
    for (std::size_t k = lo; k <= hi; ++k) pts.push_back(frf.siso(k));
    CircleFit fit = circle_fit(pts);
    fit.first = lo;
    fit.last = hi;

    std::vector<double> theta(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) theta[k] = std::arg(pts[k] - fit.center);
    for (std::size_t k = 1; k < theta.size(); ++k) {
        while (theta[k] - theta[k - 1] > std::numbers::pi) theta[k] -= 2.0 * std::numbers::pi;
        while (theta[k] - theta[k - 1] < -std::numbers::pi) theta[k] += 2.0 * std::numbers::pi;
    }

    const auto& w = frf.frequencies();
    double rate_max = -1.0;
    double max_step = 0.0;
    std::size_t at = lo;
    for (std::size_t k = 0; k + 1 < theta.size(); ++k) {
        const double dtheta = std::abs(theta[k + 1] - theta[k]);
        max_step = std::max(max_step, dtheta);
        const double w0 = w[lo + k];
        const double w1 = w[lo + k + 1];
        const double rate = dtheta / (w1 * w1 - w0 * w0);
        if (rate > rate_max) {
            rate_max = rate;
            at = lo + k;
        }
    }
    if (max_step < 1e-12) throw NumericalError("extract_mode: degenerate sweep rate around the circle");

    ModeEstimate est;
    est.fit = fit;
    est.sweep_rate = rate_max;
    est.sweep_frequency = 0.5 * (w[at] + w[at + 1]);
    const double ws2 = est.sweep_frequency * est.sweep_frequency;
    est.loss_factor = 2.0 / (ws2 * rate_max);
    const double sign = (frf.siso(peak_index) - fit.center).imag() <= 0.0 ? 1.0 : -1.0;
    est.mode.b = sign * 2.0 * fit.radius * ws2 * est.loss_factor;
    est.mode.zeta = est.loss_factor / 2.0;
    const double shrink = 1.0 - 2.0 * est.mode.zeta * est.mode.zeta;
    est.mode.omega_n = shrink > 0.0 ? est.sweep_frequency / std::sqrt(shrink) : est.sweep_frequency;
    est.residual_warning = fit.residual > config.residual_warn * fit.radius;
    return est;
}

std::vector<double> ModalFeatureVector::flattened() const {
    std::vector<double> out;
    out.reserve(1 + 3 * modes.size());
    out.push_back(b0);
    for (const auto& mode : modes) out.push_back(mode.b);
    for (const auto& mode : modes) out.push_back(mode.zeta);
    for (const auto& mode : modes) out.push_back(mode.omega_n);
    return out;
}

std::vector<std::string> feature_names(std::size_t mode_count) {
    std::vector<std::string> names{"b0"};
    for (std::size_t k = 1; k <= mode_count; ++k) names.push_back("b" + std::to_string(k));
    for (std::size_t k = 1; k <= mode_count; ++k) names.push_back("zeta" + std::to_string(k));
    for (std::size_t k = 1; k <= mode_count; ++k) names.push_back("omega" + std::to_string(k));
    return names;
}

ModalFeatureVector extract_features(const FrequencyResponse& frf, const ModalConfig& config) {
    require_siso(frf, "extract_features");
    const auto& w = frf.frequencies();
    std::vector<std::complex<double>> g(frf.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = frf.siso(k);

    std::vector<ModeEstimate> estimates;
    for (const auto p : pick_peaks(frf, config)) estimates.push_back(extract_mode(frf, p, config));
    std::optional<double> b0 = rigid_body_constant(w, g, first_window_index(estimates, g.size()));

    // Refit each mode on the response with the other modes and the rigid
    // body removed, using the previous pass's estimates.
    for (int pass = 0; pass < config.refinement_passes && !estimates.empty(); ++pass) {
        std::vector<ModeEstimate> refined;
        for (std::size_t k = 0; k < estimates.size(); ++k) {
            std::vector<Eigen::MatrixXcd> values(g.size(), Eigen::MatrixXcd(1, 1));
            for (std::size_t i = 0; i < g.size(); ++i) {
                std::complex<double> r = g[i];
                if (b0) r += *b0 / (w[i] * w[i]);
                for (std::size_t j = 0; j < estimates.size(); ++j) {
                    if (j != k) r -= mode_response(estimates[j].mode, w[i]);
                }
                values[i](0, 0) = r;
            }
            const FrequencyResponse residual(w, std::move(values), frf.sample_time());
            std::size_t peak = estimates[k].fit.first;
            for (std::size_t i = estimates[k].fit.first; i <= estimates[k].fit.last; ++i) {
                if (std::abs(residual.siso(i)) > std::abs(residual.siso(peak))) peak = i;
            }
            refined.push_back(extract_mode(residual, peak, config));
        }
        estimates = std::move(refined);
        std::vector<std::complex<double>> rigid_part(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            rigid_part[i] = g[i];
            for (const auto& e : estimates) rigid_part[i] -= mode_response(e.mode, w[i]);
        }
        b0 = rigid_body_constant(w, rigid_part, first_window_index(estimates, g.size()));
    }

    std::stable_sort(estimates.begin(), estimates.end(),
                     [](const ModeEstimate& a, const ModeEstimate& b) { return a.mode.omega_n < b.mode.omega_n; });
    ModalFeatureVector out;
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        out.modes.push_back(estimates[k].mode);
        if (estimates[k].residual_warning) out.flagged_modes.push_back(k);
    }
    out.b0 = b0.value_or(0.0);
    out.rigid_body_missing = !b0.has_value();
    return out;
}

}  // namespace lticlust
