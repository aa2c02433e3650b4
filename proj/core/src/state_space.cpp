#include "lticlust/state_space.hpp"

#include "lticlust/error.hpp"

#include <cmath>
#include <sstream>

namespace lticlust {

TimeDomain TimeDomain::discrete(double sample_time) {
    if (!(sample_time > 0.0) || !std::isfinite(sample_time)) {
        throw InputError("sampling period must be positive and finite");
    }
    TimeDomain d;
    d.sample_time_ = sample_time;
    return d;
}

double TimeDomain::sample_time() const {
    if (!sample_time_) throw InputError("continuous-time domain has no sampling period");
    return *sample_time_;
}

namespace {

std::string shape(const Eigen::MatrixXd& M) {
    std::ostringstream os;
    os << M.rows() << "x" << M.cols();
    return os.str();
}

}  // namespace

StateSpaceModel::StateSpaceModel(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd D,
                                 TimeDomain domain)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)), domain_(domain) {
    const auto n = A_.rows();
    if (A_.cols() != n) throw InputError("A must be square, got " + shape(A_));
    if (B_.rows() != n) throw InputError("B must have " + std::to_string(n) + " rows, got " + shape(B_));
    if (C_.cols() != n) throw InputError("C must have " + std::to_string(n) + " columns, got " + shape(C_));
    if (D_.rows() != C_.rows() || D_.cols() != B_.cols()) {
        throw InputError("D must be " + std::to_string(C_.rows()) + "x" + std::to_string(B_.cols()) + ", got " +
                         shape(D_));
    }
    if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite() || !D_.allFinite()) {
        throw InputError("state-space matrices must be finite");
    }
}

StateSpaceModel StateSpaceModel::gain(Eigen::MatrixXd D, TimeDomain domain) {
    const auto p = D.rows();
    const auto m = D.cols();
    return {Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, m), Eigen::MatrixXd(p, 0), std::move(D), domain};
}

StateSpaceModel StateSpaceModel::similarity_transform(const Eigen::MatrixXd& T) const {
    if (T.rows() != order() || T.cols() != order()) throw InputError("transform must be n x n");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(T);
    if (!lu.isInvertible()) throw InputError("similarity transform is singular");
    const Eigen::MatrixXd Tinv = lu.inverse();
    return {T * A_ * Tinv, T * B_, C_ * Tinv, D_, domain_};
}

}  // namespace lticlust
