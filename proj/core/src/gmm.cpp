#include "lticlust/gmm.hpp"

#include "lticlust/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace lticlust {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller on explicit 53-bit uniforms so draws do not depend on the
// standard library's distribution implementation.
double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct Params {
    std::vector<double> weights;
    std::vector<Vector> means;
    std::vector<Matrix> covariances;
};

// N x K matrix of log(pi_k N(x_i; mu_k, Sigma_k)).
Matrix log_joint(const Params& p, const Matrix& X) {
    const auto N = X.rows();
    const auto D = X.cols();
    const auto K = static_cast<Eigen::Index>(p.weights.size());
    Matrix out(N, K);
    const double log2pi = std::log(2.0 * std::numbers::pi);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double w = p.weights[static_cast<std::size_t>(k)];
        if (!(w > 0.0)) {
            out.col(k).setConstant(-std::numeric_limits<double>::infinity());
            continue;
        }
        Eigen::LLT<Matrix> llt(p.covariances[static_cast<std::size_t>(k)]);
        if (llt.info() != Eigen::Success) throw NumericalError("gmm: covariance is not positive definite");
        const Matrix L = llt.matrixL();
        const double logdet = 2.0 * L.diagonal().array().log().sum();
        const double base = std::log(w) - 0.5 * (static_cast<double>(D) * log2pi + logdet);
        for (Eigen::Index i = 0; i < N; ++i) {
            const Vector diff = X.row(i).transpose() - p.means[static_cast<std::size_t>(k)];
            const Vector y = llt.matrixL().solve(diff);
            out(i, k) = base - 0.5 * y.squaredNorm();
        }
    }
    return out;
}

// Normalizes rows of log_joint into responsibilities; returns the total log-likelihood.
double normalize_rows(const Matrix& lj, Matrix& resp) {
    resp.resize(lj.rows(), lj.cols());
    double total = 0.0;
    for (Eigen::Index i = 0; i < lj.rows(); ++i) {
        const double mx = lj.row(i).maxCoeff();
        if (!std::isfinite(mx)) throw NumericalError("gmm: point has zero density under every component");
        double s = 0.0;
        for (Eigen::Index k = 0; k < lj.cols(); ++k) s += std::exp(lj(i, k) - mx);
        for (Eigen::Index k = 0; k < lj.cols(); ++k) resp(i, k) = std::exp(lj(i, k) - mx) / s;
        total += mx + std::log(s);
    }
    return total;
}

void m_step(const Matrix& X, const Matrix& resp, double reg, Params& p) {
    const auto N = X.rows();
    const auto D = X.cols();
    const auto K = resp.cols();
    double total = 0.0;
    std::vector<double> nk(static_cast<std::size_t>(K), 0.0);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index i = 0; i < N; ++i) nk[static_cast<std::size_t>(k)] += resp(i, k);
        total += nk[static_cast<std::size_t>(k)];
    }
    for (Eigen::Index k = 0; k < K; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const double n = nk[ks];
        p.weights[ks] = n / total;
        if (!(n > 1e-300)) {
            p.weights[ks] = 0.0;
            continue;
        }
        Vector mu = Vector::Zero(D);
        for (Eigen::Index i = 0; i < N; ++i) mu += resp(i, k) * X.row(i).transpose();
        mu /= n;
        Matrix cov = Matrix::Zero(D, D);
        for (Eigen::Index i = 0; i < N; ++i) {
            const Vector d = X.row(i).transpose() - mu;
            cov.noalias() += resp(i, k) * d * d.transpose();
        }
        cov.diagonal().array() += static_cast<double>(N) * reg;
        cov /= n;
        cov = 0.5 * (cov + cov.transpose()).eval();
        p.means[ks] = std::move(mu);
        p.covariances[ks] = std::move(cov);
    }
}

Params seed_params(const Matrix& X, std::size_t K, std::mt19937_64& rng) {
    const auto N = X.rows();
    const auto D = X.cols();
    Vector direction(D);
    for (Eigen::Index d = 0; d < D; ++d) direction(d) = standard_normal(rng);
    const Vector proj = X * direction;
    std::vector<Eigen::Index> chosen;
    Eigen::Index first = 0;
    for (Eigen::Index i = 1; i < N; ++i) {
        if (proj(i) > proj(first)) first = i;
    }
    chosen.push_back(first);
    Vector nearest = (X.rowwise() - X.row(first)).rowwise().squaredNorm();
    while (chosen.size() < K) {
        Eigen::Index far = 0;
        for (Eigen::Index i = 1; i < N; ++i) {
            if (nearest(i) > nearest(far)) far = i;
        }
        chosen.push_back(far);
        nearest = nearest.cwiseMin((X.rowwise() - X.row(far)).rowwise().squaredNorm());
    }
    Params p;
    p.weights.assign(K, 1.0 / static_cast<double>(K));
    for (const auto idx : chosen) {
        p.means.emplace_back(X.row(idx).transpose());
        p.covariances.push_back(Matrix::Identity(D, D));
    }
    return p;
}

// -(N reg / 2) sum_k tr(Sigma_k^-1): the covariance prior whose MAP update
// is the regularized M-step above.
double penalty(const Params& p, Eigen::Index N, double reg) {
    double total = 0.0;
    for (std::size_t k = 0; k < p.weights.size(); ++k) {
        if (!(p.weights[k] > 0.0)) continue;
        const Eigen::LLT<Matrix> llt(p.covariances[k]);
        const Matrix inv = llt.solve(Matrix::Identity(p.covariances[k].rows(), p.covariances[k].cols()));
        total += inv.trace();
    }
    return -0.5 * static_cast<double>(N) * reg * total;
}

struct Run {
    Params params;
    std::vector<double> trace;
    int iterations = 0;
};

Run run_em(const Matrix& X, Params params, const GmmConfig& config) {
    Run run;
    const double n = static_cast<double>(X.rows());
    Matrix resp;
    for (int it = 0;; ++it) {
        const double ll = normalize_rows(log_joint(params, X), resp) + penalty(params, X.rows(), config.reg);
        const bool converged = !run.trace.empty() && (ll - run.trace.back()) / n < config.tolerance;
        run.trace.push_back(ll);
        if (converged || it >= config.max_iterations) break;
        m_step(X, resp, config.reg, params);
        ++run.iterations;
    }
    run.params = std::move(params);
    return run;
}

}  // namespace

Matrix Standardization::apply(const Matrix& rows) const {
    if (rows.cols() != shift.size()) throw InputError("feature dimension does not match the model");
    Matrix out = rows.rowwise() - shift.transpose();
    return out.array().rowwise() / scale.transpose().array();
}

GmmModel gmm_fit(const Matrix& features, std::size_t K, std::uint64_t seed, const GmmConfig& config) {
    const auto N = features.rows();
    const auto D = features.cols();
    if (K < 1 || static_cast<Eigen::Index>(K) >= N) throw InputError("gmm_fit requires 1 <= K < N");
    if (D < 1) throw InputError("gmm_fit requires at least one feature dimension");
    if (!features.allFinite()) throw InputError("gmm_fit: features must be finite");
    if (config.restarts < 1 || config.max_iterations < 1 || !(config.reg > 0.0)) {
        throw InputError("gmm_fit: invalid configuration");
    }

    GmmModel model;
    model.seed = seed;
    model.standardization.shift = features.colwise().mean().transpose();
    model.standardization.scale.resize(D);
    for (Eigen::Index d = 0; d < D; ++d) {
        const double var = (features.col(d).array() - model.standardization.shift(d)).square().mean();
        const double sd = std::sqrt(var);
        model.standardization.scale(d) = sd > 0.0 ? sd : 1.0;
    }
    const Matrix X = model.standardization.apply(features);

    Run best;
    bool have = false;
    for (int r = 0; r < config.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        Run run = run_em(X, seed_params(X, K, rng), config);
        model.restart_traces.push_back(run.trace);
        if (!have || run.trace.back() > best.trace.back()) {
            best = std::move(run);
            model.selected_restart = r;
            have = true;
        }
    }
    model.weights = std::move(best.params.weights);
    model.means = std::move(best.params.means);
    model.covariances = std::move(best.params.covariances);
    model.loglik_trace = std::move(best.trace);
    model.iterations = best.iterations;
    return model;
}

double gmm_loglik(const GmmModel& model, const Matrix& standardized) {
    Params p{model.weights, model.means, model.covariances};
    Matrix resp;
    return normalize_rows(log_joint(p, standardized), resp);
}

SoftAssignment gmm_responsibilities(const GmmModel& model, const Matrix& features) {
    if (features.cols() != model.dimension()) throw InputError("feature dimension does not match the model");
    const Matrix X = model.standardization.apply(features);
    Params p{model.weights, model.means, model.covariances};
    SoftAssignment out;
    normalize_rows(log_joint(p, X), out.responsibilities);
    out.hard_labels.resize(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < out.responsibilities.cols(); ++k) {
            if (out.responsibilities(i, k) > out.responsibilities(i, best)) best = k;
        }
        out.hard_labels[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
    }
    return out;
}

}  // namespace lticlust
