#include "lticlust/distances.hpp"

#include "lticlust/error.hpp"
#include "lticlust/parallel.hpp"

#include <cmath>
#include <sstream>

namespace lticlust {

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::h2_model: return "h2_model";
        case Metric::hinf_model: return "hinf_model";
        case Metric::h2_frf: return "h2_frf";
        case Metric::hinf_frf: return "hinf_frf";
        case Metric::realization_baseline: return "baseline";
    }
    return "unknown";
}

Metric parse_metric(std::string_view name) {
    if (name == "h2_model") return Metric::h2_model;
    if (name == "hinf_model") return Metric::hinf_model;
    if (name == "h2_frf") return Metric::h2_frf;
    if (name == "hinf_frf") return Metric::hinf_frf;
    if (name == "baseline" || name == "realization_baseline") return Metric::realization_baseline;
    throw InputError("unknown metric '" + std::string(name) + "'");
}

void RealizationWeights::validate() const {
    if (!(lambda_a > 0.0) || !(lambda_b > 0.0) || !(lambda_c > 0.0)) {
        throw InputError("realization weights must be strictly positive");
    }
}

void DistanceMatrix::validate() const {
    const auto n = values.rows();
    if (values.cols() != n) throw InputError("distance matrix must be square");
    if (labels.size() != static_cast<std::size_t>(n)) throw InputError("distance matrix label count mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (values(i, i) != 0.0) throw InputError("distance matrix diagonal must be zero");
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = values(i, j);
            if (!std::isfinite(v) || v < 0.0) throw InputError("distances must be finite and nonnegative");
            if (v != values(j, i)) throw InputError("distance matrix must be symmetric");
        }
    }
}

double realization_distance(const StateSpaceModel& g1, const StateSpaceModel& g2, const RealizationWeights& weights) {
    weights.validate();
    if (g1.order() != g2.order()) {
        throw InputError("realization_distance is defined only for systems of the same order");
    }
    if (g1.inputs() != g2.inputs() || g1.outputs() != g2.outputs()) {
        throw InputError("realization_distance: systems have different input/output counts");
    }
    const double sq = weights.lambda_c * (g1.C() - g2.C()).squaredNorm() +
                      weights.lambda_a * (g1.A() - g2.A()).squaredNorm() +
                      weights.lambda_b * (g1.B() - g2.B()).squaredNorm();
    return std::sqrt(sq);
}

namespace {

double model_distance(const StateSpaceModel& g1, const StateSpaceModel& g2, Metric metric,
                      const DistanceOptions& options) {
    switch (metric) {
        case Metric::realization_baseline: return realization_distance(g1, g2, options.weights);
        case Metric::h2_model: return h2_norm_model(difference_system(g1, g2));
        case Metric::hinf_model: return hinf_norm_model(difference_system(g1, g2), options.hinf_tol).value;
        default: break;
    }
    throw InputError("not a model metric");
}

double frf_distance(const FrequencyResponse& f1, const FrequencyResponse& f2, Metric metric) {
    const FrequencyResponse diff = f1 - f2;
    if (metric == Metric::h2_frf) return h2_norm_frf(diff);
    return hinf_norm_frf(diff).value;
}

const StateSpaceModel& as_model(const System& s) {
    const auto* m = std::get_if<StateSpaceModel>(&s);
    if (m == nullptr) throw InputError("model metrics require state-space inputs");
    return *m;
}

}  // namespace

double h_distance(const System& g1, const System& g2, Metric metric, const DistanceOptions& options) {
    if (is_model_metric(metric)) return model_distance(as_model(g1), as_model(g2), metric, options);
    SystemBatch pair{{g1, g2}, {}};
    pair.validate();
    const auto frfs = to_common_frf(pair, options.grid);
    return frf_distance(frfs[0], frfs[1], metric);
}

DistanceMatrix distance_matrix(const SystemBatch& input, Metric metric, const DistanceOptions& options) {
    SystemBatch batch = input;
    batch.validate();
    options.weights.validate();
    const std::size_t N = batch.size();

    DistanceMatrix dm;
    dm.metric = metric;
    dm.labels = batch.labels;
    dm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(N * (N > 0 ? N - 1 : 0) / 2);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) pairs.emplace_back(i, j);
    }
    std::vector<double> result(pairs.size(), 0.0);

    std::vector<FrequencyResponse> frfs;
    std::vector<const StateSpaceModel*> models;
    if (is_model_metric(metric)) {
        for (const auto& item : batch.items) models.push_back(&as_model(item));
    } else {
        frfs = to_common_frf(batch, options.grid);
    }

    parallel_for(pairs.size(), options.threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        try {
            result[idx] = is_model_metric(metric) ? model_distance(*models[i], *models[j], metric, options)
                                                  : frf_distance(frfs[i], frfs[j], metric);
        } catch (const InputError& e) {
            throw InputError("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
        } catch (const std::exception& e) {
            throw PairError(i, j, e.what());
        }
    });

    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto i = static_cast<Eigen::Index>(pairs[idx].first);
        const auto j = static_cast<Eigen::Index>(pairs[idx].second);
        dm.values(i, j) = result[idx];
        dm.values(j, i) = result[idx];
    }
    return dm;
}

DistanceMatrix closed_loop_distance_matrix(const std::vector<StateSpaceModel>& plants,
                                           const StateSpaceModel& controller, Metric metric,
                                           const DistanceOptions& options, std::vector<std::string> labels) {
    SystemBatch loops;
    loops.labels = std::move(labels);
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < plants.size(); ++i) {
        try {
            auto cl = feedback_connect(plants[i], controller);
            if (!is_asymptotically_stable(cl)) {
                failed.push_back(i);
                continue;
            }
            loops.items.emplace_back(std::move(cl));
        } catch (const NumericalError&) {
            failed.push_back(i);
        }
    }
    if (!failed.empty()) {
        std::ostringstream os;
        os << "controller does not stabilize member(s)";
        for (const auto i : failed) {
            os << ' ' << i;
            if (i < loops.labels.size()) os << " (" << loops.labels[i] << ")";
        }
        throw StabilizationError(std::move(failed), os.str());
    }
    DistanceMatrix dm = distance_matrix(loops, metric, options);
    std::ostringstream note;
    note << "closed loop, unity negative feedback, controller order " << controller.order();
    if (controller.order() == 0 && controller.D().size() == 1) note << ", gain " << controller.D()(0, 0);
    dm.note = note.str();
    return dm;
}

}  // namespace lticlust
