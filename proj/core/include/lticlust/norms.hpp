#pragma once

#include "lticlust/frequency_response.hpp"
#include "lticlust/state_space.hpp"

#include <Eigen/Dense>

namespace lticlust {

inline constexpr double kDefaultHinfTolerance = 1e-6;

enum class GrammianKind { controllability, observability };

struct Grammian {
    Eigen::MatrixXd P;
    GrammianKind kind = GrammianKind::controllability;
};

/// Solves A P + P A^T = -Q (continuous) or A P A^T - P = -Q (discrete) by
/// Kronecker linearization. A must be asymptotically stable and Q symmetric.
/// The residual is checked against 1e-8 (|A| |P| + |Q|).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q, const TimeDomain& domain);

/// Controllability (A P + P A^T = -B B^T) or observability grammian.
Grammian grammian(const StateSpaceModel& sys, GrammianKind kind = GrammianKind::controllability);

/// sqrt(tr[C P C^T]) (+ D D^T in discrete time). Continuous systems must be
/// strictly proper.
double h2_norm_model(const StateSpaceModel& sys);

struct HinfResult {
    double value = 0.0;
    /// Frequency (rad/s) at which the bound was certified; infinity when
    /// the norm is the feedthrough gain approached at high frequency.
    double peak_frequency = 0.0;
    int iterations = 0;
    /// (upper - lower) / upper of the final bracket.
    double bracket_width = 0.0;
};

/// Hamiltonian bisection for the H-infinity norm. Discrete systems are
/// mapped to continuous time by the bilinear transform first.
HinfResult hinf_norm_model(const StateSpaceModel& sys, double tol = kDefaultHinfTolerance);

/// Outcome of the Hamiltonian imaginary-axis test at one gamma.
struct HamiltonianTest {
    /// True when no certified imaginary-axis eigenvalue exists, i.e. gamma
    /// bounds the norm from above.
    bool above_norm = false;
    /// Largest sigma_max(G(jw)) found at candidate frequencies.
    double certified_gain = 0.0;
    double certified_frequency = 0.0;
};

/// Imaginary-axis eigenvalue test of the Hamiltonian at `gamma` for a stable
/// continuous-time system. gamma must exceed sigma_max(D).
HamiltonianTest hamiltonian_test(const StateSpaceModel& sys, double gamma);

/// Hamiltonian matrix at gamma; reduces to [[A, BB^T/g^2], [-C^TC, -A^T]]
/// when D = 0.
Eigen::MatrixXd hamiltonian_matrix(const StateSpaceModel& sys, double gamma);

/// Tustin map z = (1 + s/a) / (1 - s/a) with a = 2 / T_s to continuous time.
/// Preserves the H-infinity norm; w_c = a tan(w_d T_s / 2).
StateSpaceModel bilinear_to_continuous(const StateSpaceModel& sys);

/// Largest singular value of a complex matrix.
double max_singular_value(const Eigen::MatrixXcd& M);
double max_singular_value(const Eigen::MatrixXd& M);

/// Trapezoidal one-sided quadrature, doubled for the negative half:
/// value^2 = (1/pi) sum_k tr[G_k^* G_k] dw_k. Discrete responses are
/// additionally scaled by T_s.
double h2_norm_frf(const FrequencyResponse& frf);

struct GridPeak {
    double value = 0.0;
    double frequency = 0.0;
    std::size_t index = 0;
};

/// Maximum over the grid of sigma_max(G(jw_k)); ties go to the lowest frequency.
GridPeak hinf_norm_frf(const FrequencyResponse& frf);

/// Trapezoidal weights dw_k for a strictly increasing grid.
std::vector<double> trapezoid_weights(const std::vector<double>& grid);

}  // namespace lticlust
