#include "lticlust/norms.hpp"

#include "lticlust/error.hpp"
#include "lticlust/lti.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace lticlust {

namespace {

using cd = std::complex<double>;

bool stable_matrix(const Eigen::MatrixXd& A, const TimeDomain& domain) {
    if (A.rows() == 0) return true;
    const Eigen::VectorXcd eig = A.eigenvalues();
    if (domain.is_discrete()) return (eig.array().abs() < 1.0 - kStabilityMargin).all();
    return (eig.array().real() < -kStabilityMargin).all();
}

// Column-major Kronecker product.
Eigen::MatrixXd kron(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    Eigen::MatrixXd K(X.rows() * Y.rows(), X.cols() * Y.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            K.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
        }
    }
    return K;
}

// Upper-triangular-in-Schur-coordinates factor L with P = L L^*, computed without
// forming P. ||C L||_F is then linear in the realization, so the H2 norm of a
// difference of equivalent realizations cancels to rounding level.
Eigen::MatrixXcd grammian_factor(const StateSpaceModel& sys) {
    const auto n = sys.order();
    const bool discrete = sys.domain().is_discrete();
    const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(sys.A().cast<cd>());
    const Eigen::MatrixXcd& T = schur.matrixT();
    Eigen::MatrixXcd W = schur.matrixU().adjoint() * sys.B().cast<cd>();
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        const cd lambda = T(k, k);
        const Eigen::RowVectorXcd r = W.row(k);
        const double denom = discrete ? 1.0 - std::norm(lambda) : -2.0 * lambda.real();
        const double mu = r.norm() / std::sqrt(denom);
        U(k, k) = mu;
        if (k == 0) break;
        const Eigen::MatrixXcd B1 = W.topRows(k);
        if (mu == 0.0) {
            W = B1;
            continue;
        }
        const auto T1 = T.topLeftCorner(k, k);
        const Eigen::VectorXcd t = T.col(k).head(k);
        if (discrete) {
            Eigen::MatrixXcd M = std::conj(lambda) * T1;
            M.diagonal().array() -= 1.0;
            const Eigen::VectorXcd rhs = -(std::conj(lambda) * mu * t + B1 * r.adjoint() / mu);
            const Eigen::VectorXcd u = M.triangularView<Eigen::Upper>().solve(rhs);
            U.col(k).head(k) = u;
            Eigen::MatrixXcd ext(k, B1.cols() + 1);
            ext << B1, T1.triangularView<Eigen::Upper>() * u + mu * t;
            Eigen::RowVectorXcd w(B1.cols() + 1);
            w << r, lambda * mu;
            w /= mu;
            W = ext - (ext * w.adjoint()) * w;
        } else {
            Eigen::MatrixXcd M = T1;
            M.diagonal().array() += std::conj(lambda);
            const Eigen::VectorXcd rhs = -(mu * t + B1 * r.adjoint() / mu);
            const Eigen::VectorXcd u = M.triangularView<Eigen::Upper>().solve(rhs);
            U.col(k).head(k) = u;
            W = B1 - u * r / mu;
        }
    }
    return schur.matrixU() * U;
}

// sigma_max(G(jw)) for a continuous system, w >= 0 allowed.
double gain_at(const StateSpaceModel& sys, double w) {
    const auto n = sys.order();
    if (n == 0) return max_singular_value(sys.D());
    Eigen::MatrixXcd M = -sys.A().cast<cd>();
    M.diagonal().array() += cd(0.0, w);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const Eigen::MatrixXcd G = sys.C().cast<cd>() * lu.solve(sys.B().cast<cd>()) + sys.D().cast<cd>();
    const double g = max_singular_value(G);
    return std::isfinite(g) ? g : 0.0;
}

HinfResult hinf_continuous(const StateSpaceModel& sys, double tol) {
    HinfResult result;
    const double sd = max_singular_value(sys.D());
    if (sys.order() == 0) {
        result.value = sd;
        return result;
    }

    // Lower bound from a coarse grid plus the pole frequencies.
    const Eigen::VectorXcd poles = sys.A().eigenvalues();
    double slow = std::numeric_limits<double>::infinity();
    double fast = 0.0;
    std::vector<double> probes{0.0};
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
        const double mag = std::abs(poles[i]);
        if (mag > 0.0) {
            slow = std::min(slow, mag);
            fast = std::max(fast, mag);
            probes.push_back(mag);
        }
        if (std::abs(poles[i].imag()) > 0.0) probes.push_back(std::abs(poles[i].imag()));
    }
    if (fast > 0.0) {
        const auto coarse = logspace_grid(slow / 10.0, fast * 10.0, 100);
        probes.insert(probes.end(), coarse.begin(), coarse.end());
    }
    // sigma_max(D) is approached as w -> infinity.
    double lower = sd;
    double peak = sd > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    for (const double w : probes) {
        const double g = gain_at(sys, w);
        if (g > lower || (g == lower && w < peak)) {
            lower = g;
            peak = w;
        }
    }

    const double scale = 1.0 + sd + sys.B().norm() * sys.C().norm();
    const double safe = std::numeric_limits<double>::epsilon() * scale;
    const double floor = safe * 1e-6;
    double upper = 2.0 * lower + safe;
    int doublings = 0;
    for (;;) {
        const auto t = hamiltonian_test(sys, upper);
        if (t.above_norm) break;
        if (t.certified_gain > lower) {
            lower = t.certified_gain;
            peak = t.certified_frequency;
        }
        upper = std::max(2.0 * upper, 2.0 * lower);
        if (++doublings > 60) throw NumericalError("hinf_norm_model: bracket expansion failed after 60 doublings");
    }

    int iterations = 0;
    while (upper - lower > tol * upper && upper > floor && iterations < 400) {
        ++iterations;
        const double mid = 0.5 * (lower + upper);
        const auto t = hamiltonian_test(sys, mid);
        if (t.above_norm) {
            upper = mid;
        } else {
            lower = mid;
            if (t.certified_gain > lower) {
                lower = std::min(t.certified_gain, upper);
                peak = t.certified_frequency;
            } else if (t.certified_gain >= mid) {
                peak = t.certified_frequency;
            }
        }
    }
    result.value = 0.5 * (lower + upper);
    result.peak_frequency = peak;
    result.iterations = iterations;
    result.bracket_width = upper > 0.0 ? (upper - lower) / upper : 0.0;
    return result;
}

}  // namespace

double max_singular_value(const Eigen::MatrixXcd& M) {
    if (M.size() == 0) return 0.0;
    if (M.size() == 1) return std::abs(M(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

double max_singular_value(const Eigen::MatrixXd& M) {
    if (M.size() == 0) return 0.0;
    if (M.size() == 1) return std::abs(M(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues()(0);
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q, const TimeDomain& domain) {
    const auto n = A.rows();
    if (A.cols() != n || Q.rows() != n || Q.cols() != n) throw InputError("solve_lyapunov: A and Q must be n x n");
    if ((Q - Q.transpose()).norm() > 1e-10 * std::max(1.0, Q.norm())) {
        throw InputError("solve_lyapunov: Q must be symmetric");
    }
    if (!stable_matrix(A, domain)) throw UnstableSystemError("solve_lyapunov: A is not asymptotically stable");
    if (n == 0) return Eigen::MatrixXd(0, 0);

    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd K;
    if (domain.is_discrete()) {
        // vec(A P A^T) - vec(P) = -vec(Q)
        K = kron(A, A);
        K.diagonal().array() -= 1.0;
    } else {
        // vec(A P + P A^T) = (I (x) A + A (x) I) vec(P)
        K = kron(I, A) + kron(A, I);
    }
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    const Eigen::VectorXd x = lu.solve(rhs);
    Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
    P = 0.5 * (P + P.transpose()).eval();

    const Eigen::MatrixXd residual =
        domain.is_discrete() ? Eigen::MatrixXd(A * P * A.transpose() - P + Q) : Eigen::MatrixXd(A * P + P * A.transpose() + Q);
    const double bound = 1e-8 * (A.norm() * P.norm() + Q.norm());
    if (!P.allFinite() || residual.norm() > bound) {
        std::ostringstream os;
        os << "solve_lyapunov: residual " << residual.norm() << " exceeds " << bound;
        throw NumericalError(os.str());
    }
    return P;
}

Grammian grammian(const StateSpaceModel& sys, GrammianKind kind) {
    if (kind == GrammianKind::controllability) {
        return {solve_lyapunov(sys.A(), sys.B() * sys.B().transpose(), sys.domain()), kind};
    }
    return {solve_lyapunov(sys.A().transpose(), sys.C().transpose() * sys.C(), sys.domain()), kind};
}

double h2_norm_model(const StateSpaceModel& sys) {
    if (!is_asymptotically_stable(sys)) throw UnstableSystemError("h2_norm_model: system is not asymptotically stable");
    const bool discrete = sys.domain().is_discrete();
    if (!discrete && !sys.D().isZero(0.0)) {
        throw InputError("h2_norm_model: H2 norm is undefined for a continuous system with D != 0");
    }
    double sq = 0.0;
    if (sys.order() > 0) sq = (sys.C().cast<cd>() * grammian_factor(sys)).squaredNorm();
    if (discrete) sq += (sys.D() * sys.D().transpose()).trace();
    return std::sqrt(std::max(sq, 0.0));
}

Eigen::MatrixXd hamiltonian_matrix(const StateSpaceModel& sys, double gamma) {
    const auto n = sys.order();
    const auto m = sys.inputs();
    const auto p = sys.outputs();
    const auto& A = sys.A();
    const auto& B = sys.B();
    const auto& C = sys.C();
    const auto& D = sys.D();
    Eigen::MatrixXd H(2 * n, 2 * n);
    if (D.isZero(0.0)) {
        H << A, B * B.transpose() / (gamma * gamma), -C.transpose() * C, -A.transpose();
        return H;
    }
    const Eigen::MatrixXd R = gamma * gamma * Eigen::MatrixXd::Identity(m, m) - D.transpose() * D;
    const Eigen::MatrixXd Rinv = R.ldlt().solve(Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd Ah = A + B * Rinv * D.transpose() * C;
    const Eigen::MatrixXd W = Eigen::MatrixXd::Identity(p, p) + D * Rinv * D.transpose();
    H << Ah, B * Rinv * B.transpose(), -C.transpose() * W * C, -Ah.transpose();
    return H;
}

HamiltonianTest hamiltonian_test(const StateSpaceModel& sys, double gamma) {
    HamiltonianTest out;
    const Eigen::MatrixXd H = hamiltonian_matrix(sys, gamma);
    if (!H.allFinite()) {
        // Nothing can be certified.
        out.above_norm = true;
        return out;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(H, false);
    const Eigen::VectorXcd eig = es.eigenvalues();
    const double band = 1e-8 * H.norm();
    std::vector<double> crossings;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        if (std::abs(eig[i].real()) <= band) crossings.push_back(std::abs(eig[i].imag()));
    }
    if (crossings.empty()) {
        out.above_norm = true;
        return out;
    }
    // Candidate eigenvalues are certified by the response itself: between
    // consecutive crossings sigma_max(G) exceeds gamma when gamma is below the norm.
    crossings.push_back(0.0);
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());
    std::vector<double> probes = crossings;
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) probes.push_back(0.5 * (crossings[i] + crossings[i + 1]));
    for (const double w : probes) {
        const double g = gain_at(sys, w);
        if (g > out.certified_gain) {
            out.certified_gain = g;
            out.certified_frequency = w;
        }
    }
    out.above_norm = out.certified_gain < gamma;
    return out;
}

StateSpaceModel bilinear_to_continuous(const StateSpaceModel& sys) {
    if (!sys.domain().is_discrete()) return sys;
    const double alpha = 2.0 / sys.domain().sample_time();
    const auto n = sys.order();
    if (n == 0) return StateSpaceModel::gain(sys.D());
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.A() + I);
    if (!lu.isInvertible()) throw NumericalError("bilinear transform: A has an eigenvalue at -1");
    const Eigen::MatrixXd M = lu.inverse();
    const double r = std::sqrt(2.0 * alpha);
    return {alpha * M * (sys.A() - I), r * M * sys.B(), r * sys.C() * M, sys.D() - sys.C() * M * sys.B(),
            TimeDomain::continuous()};
}

HinfResult hinf_norm_model(const StateSpaceModel& sys, double tol) {
    if (!(tol > 0.0)) throw InputError("hinf_norm_model: tolerance must be positive");
    if (!is_asymptotically_stable(sys)) {
        throw UnstableSystemError("hinf_norm_model: system is not asymptotically stable");
    }
    if (!sys.domain().is_discrete()) return hinf_continuous(sys, tol);
    const double ts = sys.domain().sample_time();
    HinfResult r = hinf_continuous(bilinear_to_continuous(sys), tol);
    r.peak_frequency = (2.0 / ts) * std::atan(r.peak_frequency * ts / 2.0);
    return r;
}

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
    const auto N = grid.size();
    std::vector<double> w(N, 0.0);
    if (N < 2) return w;
    w.front() = 0.5 * (grid[1] - grid[0]);
    w.back() = 0.5 * (grid[N - 1] - grid[N - 2]);
    for (std::size_t k = 1; k + 1 < N; ++k) w[k] = 0.5 * (grid[k + 1] - grid[k - 1]);
    return w;
}

double h2_norm_frf(const FrequencyResponse& frf) {
    const auto weights = trapezoid_weights(frf.frequencies());
    double sum = 0.0;
    for (std::size_t k = 0; k < frf.size(); ++k) sum += frf.value(k).squaredNorm() * weights[k];
    double sq = sum / std::numbers::pi;
    if (frf.sample_time()) sq *= *frf.sample_time();
    return std::sqrt(sq);
}

GridPeak hinf_norm_frf(const FrequencyResponse& frf) {
    GridPeak peak;
    for (std::size_t k = 0; k < frf.size(); ++k) {
        const double g = max_singular_value(frf.value(k));
        if (k == 0 || g > peak.value) {
            peak.value = g;
            peak.frequency = frf.frequencies()[k];
            peak.index = k;
        }
    }
    return peak;
}

}  // namespace lticlust
