#pragma once

#include <Eigen/Dense>

#include <optional>

namespace lticlust {

/// Continuous time, or discrete time with a sampling period in seconds.
class TimeDomain {
public:
    static TimeDomain continuous() { return TimeDomain{}; }
    static TimeDomain discrete(double sample_time);

    [[nodiscard]] bool is_discrete() const noexcept { return sample_time_.has_value(); }
    [[nodiscard]] bool is_continuous() const noexcept { return !is_discrete(); }
    /// Sampling period; only meaningful for discrete domains.
    [[nodiscard]] double sample_time() const;

    friend bool operator==(const TimeDomain&, const TimeDomain&) = default;

private:
    std::optional<double> sample_time_;
};

/// Realization (A, B, C, D) of a finite-dimensional LTI system.
///
/// A is n x n, B is n x m, C is p x n and D is p x m. An order of zero is a
/// pure feedthrough system. Dimensions are checked on construction.
class StateSpaceModel {
public:
    StateSpaceModel(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd D,
                    TimeDomain domain = TimeDomain::continuous());

    /// Static gain (order-zero) system.
    static StateSpaceModel gain(Eigen::MatrixXd D, TimeDomain domain = TimeDomain::continuous());

    [[nodiscard]] const Eigen::MatrixXd& A() const noexcept { return A_; }
    [[nodiscard]] const Eigen::MatrixXd& B() const noexcept { return B_; }
    [[nodiscard]] const Eigen::MatrixXd& C() const noexcept { return C_; }
    [[nodiscard]] const Eigen::MatrixXd& D() const noexcept { return D_; }
    [[nodiscard]] const TimeDomain& domain() const noexcept { return domain_; }

    [[nodiscard]] Eigen::Index order() const noexcept { return A_.rows(); }
    [[nodiscard]] Eigen::Index inputs() const noexcept { return D_.cols(); }
    [[nodiscard]] Eigen::Index outputs() const noexcept { return D_.rows(); }

    /// Realization (T A T^-1, T B, C T^-1, D); same transfer function.
    [[nodiscard]] StateSpaceModel similarity_transform(const Eigen::MatrixXd& T) const;

private:
    Eigen::MatrixXd A_;
    Eigen::MatrixXd B_;
    Eigen::MatrixXd C_;
    Eigen::MatrixXd D_;
    TimeDomain domain_;
};

}  // namespace lticlust
