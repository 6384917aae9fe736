#include <benchmark/benchmark.h>

#include <random>

#include "windkrige/temporal.hpp"

namespace {

using namespace windkrige;

DailySeries simulated_series(std::size_t n) {
    TemporalParams p;
    p.a = {1.5, 0.25, -0.12, 0.08, 0.05, 0.04, -0.03, 0.025, 0.02, -0.015, 0.012, 0.01, -0.008};
    p.alpha = {0.45, 0.15};
    p.b = {0.16, 0.03, -0.02};

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DailySeries s;
    s.transform = Transform::Log;
    s.values.resize(n);
    double x1 = 0.0, x2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double x = p.alpha[0] * x1 + p.alpha[1] * x2 +
                         std::sqrt(eval_variance(p, static_cast<double>(t))) * gauss(rng);
        s.values[t] = eval_seasonal(p, static_cast<double>(t)) + x;
        x2 = x1;
        x1 = x;
    }
    return s;
}

void BM_FitTemporalModel(benchmark::State& state) {
    const DailySeries series = simulated_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_temporal_model(series));
}
BENCHMARK(BM_FitTemporalModel)->Arg(1612);

void BM_Acf(benchmark::State& state) {
    const DailySeries series = simulated_series(1612);
    for (auto _ : state) benchmark::DoNotOptimize(acf(series.values, 30));
}
BENCHMARK(BM_Acf);

void BM_KsTest(benchmark::State& state) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> eps(1610);
    for (double& v : eps) v = gauss(rng);
    for (auto _ : state) benchmark::DoNotOptimize(ks_test_normal(eps));
}
BENCHMARK(BM_KsTest);

}  // namespace
