#include "catdiv/hjb_solver.hpp"
#include "catdiv/simulator.hpp"
#include "catdiv/value_function.hpp"
#include "catdiv/verification.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

catdiv::ModelParams canonical() {
    catdiv::ModelParams m;
    m.mu = 2.0;
    m.sigma2 = 5.0;
    m.c = 0.05;
    m.beta = 0.8;
    m.k = 0.5;
    return m;
}

catdiv::ModelParams tabulated() {
    auto m = canonical();
    std::vector<double> z, d;
    for (int i = 0; i <= 4000; ++i) {
        z.push_back(i * 2.5e-3);
        d.push_back(std::exp(-z.back()));
    }
    m.levy = catdiv::LevyMeasure::tabulated(z, d, 1.0);
    return m;
}

void BM_SolvePolicyExponential(benchmark::State& state) {
    const auto m = canonical();
    for (auto _ : state) benchmark::DoNotOptimize(catdiv::solve_policy(m));
}
BENCHMARK(BM_SolvePolicyExponential)->Unit(benchmark::kMicrosecond);

void BM_SolvePolicyTabulated(benchmark::State& state) {
    const auto m = tabulated();
    for (auto _ : state) benchmark::DoNotOptimize(catdiv::solve_policy(m));
}
BENCHMARK(BM_SolvePolicyTabulated)->Unit(benchmark::kMillisecond);

void BM_HjbResidual(benchmark::State& state) {
    const auto v = catdiv::ValueFunction::solve(canonical());
    const double x = v.policy().x0 * static_cast<double>(state.range(0)) / 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(v.hjb_residual(x, 0.9));
}
BENCHMARK(BM_HjbResidual)->Arg(1)->Arg(6)->Arg(16);

void BM_VerifyGrid(benchmark::State& state) {
    const auto v = catdiv::ValueFunction::solve(canonical());
    const auto grid = catdiv::verification_grid(v, static_cast<std::size_t>(state.range(0)));
    catdiv::VerifyOptions opts;
    opts.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(catdiv::verify_variational_inequality(v, grid, opts));
}
BENCHMARK(BM_VerifyGrid)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SimulatePath(benchmark::State& state) {
    auto m = canonical();
    m.c = 0.5;
    const auto p = catdiv::solve_policy(m);
    catdiv::SimConfig cfg;
    cfg.horizon = 40.0;
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(catdiv::simulate_path(m, catdiv::OptimalFeedback{p}, p.x_star, cfg, i++));
    }
    state.SetItemsProcessed(state.iterations() * 40000);
}
BENCHMARK(BM_SimulatePath)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
