#pragma once

#include "lticlust/distances.hpp"
#include "lticlust/state_space.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using lticlust::StateSpaceModel;

inline Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = n(rng);
    }
    return M;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random continuous system whose spectral abscissa is -margin.
inline StateSpaceModel random_stable(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p, Eigen::Index m,
                                     bool strictly_proper = true, double margin = -1.0) {
    Eigen::MatrixXd A = gaussian_matrix(rng, n, n);
    const double abscissa = A.eigenvalues().real().maxCoeff();
    if (margin <= 0.0) margin = uniform(rng, 0.2, 1.0);
    A -= (abscissa + margin) * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd D = strictly_proper ? Eigen::MatrixXd::Zero(p, m) : gaussian_matrix(rng, p, m);
    return StateSpaceModel(A, gaussian_matrix(rng, n, m), gaussian_matrix(rng, p, n), D);
}

/// Random invertible T = Q1 diag(s) Q2 with singular values spread over [1, cond].
inline Eigen::MatrixXd random_similarity(std::mt19937_64& rng, Eigen::Index n, double cond) {
    const Eigen::MatrixXd Q1 = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian_matrix(rng, n, n)).householderQ();
    const Eigen::MatrixXd Q2 = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian_matrix(rng, n, n)).householderQ();
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s(i) = n == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return Q1 * s.asDiagonal() * Q2;
}

/// b / (s + a).
inline StateSpaceModel first_order(double a, double b = 1.0) {
    return StateSpaceModel(Eigen::MatrixXd::Constant(1, 1, -a), Eigen::MatrixXd::Constant(1, 1, b),
                           Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Zero(1, 1));
}

/// b / (s^2 + 2 zeta w s + w^2) in companion form.
inline StateSpaceModel resonator(double w, double zeta, double b) {
    Eigen::MatrixXd A(2, 2);
    A << 0.0, 1.0, -w * w, -2.0 * zeta * w;
    Eigen::MatrixXd B(2, 1);
    B << 0.0, 1.0;
    Eigen::MatrixXd C(1, 2);
    C << b, 0.0;
    return StateSpaceModel(A, B, C, Eigen::MatrixXd::Zero(1, 1));
}

inline std::complex<double> resonator_response(double w, double zeta, double b, double omega) {
    return b / std::complex<double>(w * w - omega * omega, 2.0 * zeta * w * omega);
}

/// Minimum over all k-subsets of medoids of the nearest-medoid cost.
inline double brute_force_medoid_cost(const lticlust::DistanceMatrix& dm, std::size_t k) {
    const std::size_t N = dm.size();
    std::vector<bool> pick(N, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < N; ++j) {
                if (pick[j]) nearest = std::min(nearest, dm(i, j));
            }
            cost += nearest;
        }
        best = std::min(best, cost);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

/// Distance matrix of points in the plane.
inline lticlust::DistanceMatrix euclidean(const std::vector<Eigen::Vector2d>& points) {
    lticlust::DistanceMatrix dm;
    const auto N = static_cast<Eigen::Index>(points.size());
    dm.values.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            dm.values(i, j) = (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]).norm();
        }
    }
    for (Eigen::Index i = 0; i < N; ++i) dm.labels.push_back("x" + std::to_string(i));
    return dm;
}

inline double relative(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

/// Fresh empty directory for one test.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const char* root = std::getenv("LTICLUST_TEST_TMP");
    const std::filesystem::path base =
        root != nullptr ? std::filesystem::path(root) : std::filesystem::temp_directory_path() / "lticlust_tests";
    const auto dir = base / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace oracle
