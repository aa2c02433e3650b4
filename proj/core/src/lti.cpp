#include "lticlust/lti.hpp"

#include "lticlust/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace lticlust {

namespace {

void require_compatible(const StateSpaceModel& g1, const StateSpaceModel& g2, const char* what) {
    if (g1.outputs() != g2.outputs() || g1.inputs() != g2.inputs()) {
        throw InputError(std::string(what) + ": systems have different input/output counts");
    }
    if (!(g1.domain() == g2.domain())) throw InputError(std::string(what) + ": systems have different time domains");
}

// Relative reciprocal condition number below which a resolvent counts as singular.
constexpr double kSingularRcond = 1e-14;

}  // namespace

bool is_asymptotically_stable(const StateSpaceModel& sys, double margin) {
    if (sys.order() == 0) return true;
    const Eigen::VectorXcd eig = sys.A().eigenvalues();
    if (sys.domain().is_discrete()) {
        return (eig.array().abs() < 1.0 - margin).all();
    }
    return (eig.array().real() < -margin).all();
}

StateSpaceModel difference_system(const StateSpaceModel& g1, const StateSpaceModel& g2) {
    require_compatible(g1, g2, "difference_system");
    const auto n1 = g1.order();
    const auto n2 = g2.order();
    const auto n = n1 + n2;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    A.topLeftCorner(n1, n1) = g1.A();
    A.bottomRightCorner(n2, n2) = g2.A();
    Eigen::MatrixXd B(n, g1.inputs());
    B << g1.B(), g2.B();
    Eigen::MatrixXd C(g1.outputs(), n);
    C << g1.C(), -g2.C();
    return {std::move(A), std::move(B), std::move(C), g1.D() - g2.D(), g1.domain()};
}

StateSpaceModel mean_system(std::span<const StateSpaceModel> batch) {
    if (batch.empty()) throw InputError("mean_system: empty batch");
    Eigen::Index n = 0;
    for (const auto& g : batch) {
        require_compatible(batch.front(), g, "mean_system");
        n += g.order();
    }
    const auto N = static_cast<double>(batch.size());
    const auto p = batch.front().outputs();
    const auto m = batch.front().inputs();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd B(n, m);
    Eigen::MatrixXd C(p, n);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(p, m);
    Eigen::Index offset = 0;
    for (const auto& g : batch) {
        const auto k = g.order();
        A.block(offset, offset, k, k) = g.A();
        B.middleRows(offset, k) = g.B();
        C.middleCols(offset, k) = g.C() / N;
        D += g.D();
        offset += k;
    }
    D /= N;
    return {std::move(A), std::move(B), std::move(C), std::move(D), batch.front().domain()};
}

StateSpaceModel feedback_connect(const StateSpaceModel& plant, const StateSpaceModel& controller) {
    if (controller.inputs() != plant.outputs() || controller.outputs() != plant.inputs()) {
        throw InputError("feedback_connect: controller must map plant outputs to plant inputs");
    }
    if (!(plant.domain() == controller.domain())) {
        throw InputError("feedback_connect: plant and controller have different time domains");
    }
    const auto p = plant.outputs();
    const auto m = plant.inputs();
    const auto& Ap = plant.A();
    const auto& Bp = plant.B();
    const auto& Cp = plant.C();
    const auto& Dp = plant.D();
    const auto& Ak = controller.A();
    const auto& Bk = controller.B();
    const auto& Ck = controller.C();
    const auto& Dk = controller.D();

    // (I + Dp Dk) y = Cp xp - Dp Ck xk + Dp r
    const Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(p, p) + Dp * Dk;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(loop);
    if (!lu.isInvertible() || lu.rcond() < 1e-12) {
        throw NumericalError("feedback_connect: ill-posed loop, I + D_plant D_ctrl is singular");
    }
    const Eigen::MatrixXd E = lu.inverse();

    // y = Cy x + Dy r, u = r - Ck xk - Dk y
    const auto np = plant.order();
    const auto nk = controller.order();
    Eigen::MatrixXd Cy(p, np + nk);
    Cy << E * Cp, -E * Dp * Ck;
    const Eigen::MatrixXd Dy = E * Dp;
    Eigen::MatrixXd Cu(m, np + nk);
    Cu << -Dk * Cy.leftCols(np), -Ck - Dk * Cy.rightCols(nk);
    const Eigen::MatrixXd Du = Eigen::MatrixXd::Identity(m, m) - Dk * Dy;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(np + nk, np + nk);
    A.topLeftCorner(np, np) = Ap;
    A.bottomRightCorner(nk, nk) = Ak;
    A.topRows(np) += Bp * Cu;
    A.bottomRows(nk) += Bk * Cy;
    Eigen::MatrixXd B(np + nk, m);
    B << Bp * Du, Bk * Dy;
    return {std::move(A), std::move(B), std::move(Cy), Dy, plant.domain()};
}

FrequencyResponse evaluate_frf(const StateSpaceModel& sys, const std::vector<double>& frequencies) {
    using cd = std::complex<double>;
    const auto n = sys.order();
    const bool discrete = sys.domain().is_discrete();
    const double ts = discrete ? sys.domain().sample_time() : 0.0;
    const Eigen::MatrixXcd A = sys.A().cast<cd>();
    const Eigen::MatrixXcd B = sys.B().cast<cd>();
    const Eigen::MatrixXcd C = sys.C().cast<cd>();
    const Eigen::MatrixXcd D = sys.D().cast<cd>();

    std::vector<Eigen::MatrixXcd> values;
    values.reserve(frequencies.size());
    for (const double w : frequencies) {
        if (n == 0) {
            values.push_back(D);
            continue;
        }
        const cd sigma = discrete ? std::polar(1.0, w * ts) : cd(0.0, w);
        Eigen::MatrixXcd M = -A;
        M.diagonal().array() += sigma;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        const double rcond = lu.rcond();
        if (!(rcond > kSingularRcond)) {
            std::ostringstream os;
            os << "evaluate_frf: resolvent is singular at omega = " << w << " rad/s";
            throw SingularResolventError(w, os.str());
        }
        values.push_back(C * lu.solve(B) + D);
    }
    std::optional<double> sample_time;
    if (discrete) sample_time = ts;
    return {frequencies, std::move(values), sample_time};
}

FrequencyResponse resample_frf(const FrequencyResponse& frf, const std::vector<double>& grid) {
    const auto& src = frf.frequencies();
    const double lo = src.front();
    const double hi = src.back();
    const double slack = 1e-12;
    std::vector<Eigen::MatrixXcd> values;
    values.reserve(grid.size());
    for (const double w : grid) {
        if (w < lo * (1.0 - slack) || w > hi * (1.0 + slack)) {
            std::ostringstream os;
            os << "resample_frf: omega = " << w << " lies outside [" << lo << ", " << hi << "]";
            throw InputError(os.str());
        }
        const double wc = std::clamp(w, lo, hi);
        auto it = std::upper_bound(src.begin(), src.end(), wc);
        std::size_t right = static_cast<std::size_t>(it - src.begin());
        if (right >= src.size()) right = src.size() - 1;
        const std::size_t left = right - 1;
        if (wc == src[left]) {
            values.push_back(frf.value(left));
            continue;
        }
        if (wc == src[right]) {
            values.push_back(frf.value(right));
            continue;
        }
        const double t = (wc - src[left]) / (src[right] - src[left]);
        values.push_back((1.0 - t) * frf.value(left) + t * frf.value(right));
    }
    return {grid, std::move(values), frf.sample_time()};
}

bool SystemBatch::all_models() const {
    return std::all_of(items.begin(), items.end(),
                       [](const System& s) { return std::holds_alternative<StateSpaceModel>(s); });
}

bool SystemBatch::all_frfs() const {
    return std::all_of(items.begin(), items.end(),
                       [](const System& s) { return std::holds_alternative<FrequencyResponse>(s); });
}

namespace {

std::pair<Eigen::Index, Eigen::Index> channels(const System& s) {
    return std::visit([](const auto& v) { return std::pair{v.outputs(), v.inputs()}; }, s);
}

}  // namespace

void SystemBatch::validate() {
    if (labels.empty()) {
        for (std::size_t i = 0; i < items.size(); ++i) labels.push_back("sys" + std::to_string(i));
    }
    if (labels.size() != items.size()) throw InputError("batch label count does not match item count");
    if (items.empty()) return;
    const auto ch = channels(items.front());
    for (const auto& item : items) {
        if (channels(item) != ch) throw InputError("batch members have different input/output counts");
    }
}

std::optional<std::vector<double>> common_frf_grid(const SystemBatch& batch) {
    std::vector<const FrequencyResponse*> frfs;
    for (const auto& item : batch.items) {
        if (const auto* f = std::get_if<FrequencyResponse>(&item)) frfs.push_back(f);
    }
    if (frfs.empty()) return std::nullopt;
    const auto& first = frfs.front()->frequencies();
    if (std::all_of(frfs.begin(), frfs.end(), [&](const auto* f) { return f->frequencies() == first; })) {
        return first;
    }
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (const auto* f : frfs) {
        lo = std::max(lo, f->frequencies().front());
        hi = std::min(hi, f->frequencies().back());
    }
    if (!(hi > lo)) throw InputError("FRF members have no overlapping frequency range");
    std::vector<double> best;
    bool found = false;
    for (const auto* f : frfs) {
        std::vector<double> clipped;
        for (const double w : f->frequencies()) {
            if (w >= lo && w <= hi) clipped.push_back(w);
        }
        if (clipped.size() >= 2 && (!found || clipped.size() < best.size())) {
            best = std::move(clipped);
            found = true;
        }
    }
    if (!found) throw InputError("FRF members share fewer than two grid points in their common range");
    return best;
}

std::vector<double> default_model_grid(std::span<const StateSpaceModel> models) {
    double slow = std::numeric_limits<double>::infinity();
    double fast = 0.0;
    for (const auto& m : models) {
        if (m.order() == 0) continue;
        const Eigen::VectorXcd eig = m.A().eigenvalues();
        for (Eigen::Index i = 0; i < eig.size(); ++i) {
            double mag = std::abs(eig[i]);
            if (m.domain().is_discrete()) {
                // Map z-plane poles to an equivalent continuous magnitude.
                mag = std::abs(std::log(eig[i])) / m.domain().sample_time();
            }
            if (mag > 0.0) {
                slow = std::min(slow, mag);
                fast = std::max(fast, mag);
            }
        }
    }
    if (!(fast > 0.0)) {
        slow = 1.0;
        fast = 1.0;
    }
    double lo = slow / 10.0;
    double hi = fast * 10.0;
    for (const auto& m : models) {
        if (m.domain().is_discrete()) hi = std::min(hi, std::numbers::pi / m.domain().sample_time());
    }
    if (!(hi > lo)) lo = hi / 100.0;
    return logspace_grid(lo, hi, 1000);
}

std::vector<FrequencyResponse> to_common_frf(const SystemBatch& batch, const std::optional<std::vector<double>>& grid) {
    std::vector<double> target;
    if (grid) {
        target = *grid;
    } else if (auto shared = common_frf_grid(batch)) {
        target = std::move(*shared);
    } else {
        std::vector<StateSpaceModel> models;
        for (const auto& item : batch.items) models.push_back(std::get<StateSpaceModel>(item));
        target = default_model_grid(models);
    }
    std::vector<FrequencyResponse> out;
    out.reserve(batch.size());
    for (const auto& item : batch.items) {
        if (const auto* model = std::get_if<StateSpaceModel>(&item)) {
            out.push_back(evaluate_frf(*model, target));
        } else {
            const auto& frf = std::get<FrequencyResponse>(item);
            out.push_back(frf.frequencies() == target ? frf : resample_frf(frf, target));
        }
    }
    return out;
}

}  // namespace lticlust
