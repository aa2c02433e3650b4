#include "lticlust/distances.hpp"
#include "lticlust/lti.hpp"
#include "lticlust/norms.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace lticlust;

namespace {

StateSpaceModel random_stable(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    auto draw = [&](Eigen::Index r, Eigen::Index c) {
        return Eigen::MatrixXd(Eigen::MatrixXd::NullaryExpr(r, c, [&] { return normal(rng); }));
    };
    Eigen::MatrixXd A = draw(n, n);
    A.diagonal().array() -= A.eigenvalues().real().maxCoeff() + 0.5;
    return StateSpaceModel(A, draw(n, 2), draw(2, n), Eigen::MatrixXd::Zero(2, 2));
}

void BM_H2Model(benchmark::State& state) {
    const auto g = random_stable(state.range(0), 1);
    for (auto _ : state) benchmark::DoNotOptimize(h2_norm_model(g));
}
BENCHMARK(BM_H2Model)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void BM_HinfModel(benchmark::State& state) {
    const auto g = random_stable(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hinf_norm_model(g).value);
}
BENCHMARK(BM_HinfModel)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void BM_EvaluateFrf(benchmark::State& state) {
    const auto g = random_stable(8, 3);
    const auto grid = logspace_grid(1e-2, 1e2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_frf(g, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateFrf)->Arg(500)->Arg(2000);

void BM_HinfModelDistance(benchmark::State& state) {
    const auto a = random_stable(6, 4);
    const auto b = random_stable(6, 5);
    for (auto _ : state) benchmark::DoNotOptimize(h_distance(a, b, Metric::hinf_model));
}
BENCHMARK(BM_HinfModelDistance);

}  // namespace

BENCHMARK_MAIN();
