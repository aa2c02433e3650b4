#include "lticlust/distances.hpp"
#include "lticlust/gmm.hpp"
#include "lticlust/kmedoids.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/plantgen.hpp"

#include <benchmark/benchmark.h>

using namespace lticlust;

namespace {

GeneratedBatch vcm_batch(std::size_t plants) {
    PerturbationSpec spec;
    spec.seed = 7;
    return generate_batch_total(default_vcm_templates(), plants, spec, default_vcm_grid());
}

SystemBatch as_systems(const GeneratedBatch& batch) {
    SystemBatch out;
    for (const auto& frf : batch.frfs) out.items.emplace_back(frf);
    out.labels = batch.names;
    return out;
}

void BM_GenerateBatch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(vcm_batch(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GenerateBatch)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_DistanceMatrixFrf(benchmark::State& state) {
    const auto systems = as_systems(vcm_batch(30));
    DistanceOptions options;
    options.threads = 1;
    const auto metric = state.range(0) == 0 ? Metric::hinf_frf : Metric::h2_frf;
    for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(systems, metric, options));
}
BENCHMARK(BM_DistanceMatrixFrf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_KMedoids(benchmark::State& state) {
    const auto dm = distance_matrix(as_systems(vcm_batch(static_cast<std::size_t>(state.range(0)))), Metric::hinf_frf);
    for (auto _ : state) benchmark::DoNotOptimize(kmedoids(dm, 3));
}
BENCHMARK(BM_KMedoids)->Arg(30)->Arg(90)->Unit(benchmark::kMillisecond);

void BM_ElbowSelect(benchmark::State& state) {
    const auto dm = distance_matrix(as_systems(vcm_batch(30)), Metric::hinf_frf);
    for (auto _ : state) benchmark::DoNotOptimize(elbow_select_k(dm, 8));
}
BENCHMARK(BM_ElbowSelect)->Unit(benchmark::kMillisecond);

void BM_ExtractFeatures(benchmark::State& state) {
    const auto batch = vcm_batch(3);
    for (auto _ : state) benchmark::DoNotOptimize(extract_features(batch.frfs.front()));
}
BENCHMARK(BM_ExtractFeatures)->Unit(benchmark::kMicrosecond);

void BM_GmmFit(benchmark::State& state) {
    const auto batch = vcm_batch(300);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(batch.frfs.size()), 10);
    for (std::size_t i = 0; i < batch.frfs.size(); ++i) {
        const auto row = extract_features(batch.frfs[i]).flattened();
        for (std::size_t j = 0; j < row.size(); ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    for (auto _ : state) benchmark::DoNotOptimize(gmm_fit(X, 3, 7));
}
BENCHMARK(BM_GmmFit)->Unit(benchmark::kMillisecond);

}  // namespace
