#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "windkrige/variogram.hpp"

namespace {

using namespace windkrige;

std::vector<GeoPoint> grid_sites(std::size_t n) {
    std::vector<GeoPoint> sites;
    for (std::size_t i = 0; sites.size() < n; ++i)
        sites.push_back({32.5 + 0.5 * (i / 12), -120.0 + 0.5 * (i % 12)});
    return sites;
}

void BM_EmpiricalSemivariogram(benchmark::State& state) {
    const auto sites = grid_sites(85);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> field(0.0, 1.0);
    std::vector<double> y(sites.size());
    for (double& v : y) v = field(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(empirical_semivariogram(sites, y, 25.0, 320.0));
}
BENCHMARK(BM_EmpiricalSemivariogram);

void BM_FitModel(benchmark::State& state) {
    VariogramModel truth;
    truth.nugget = 0.1;
    truth.structures = {{StructureKind::Spherical, 1.0, 80.0}};
    EmpiricalVariogram ev;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.02);
    for (int i = 0; i < 12; ++i) {
        const double h = (i + 0.5) * 25.0;
        ev.bin_centers_km.push_back(h);
        ev.gamma_hat.push_back(std::max(eval_model(truth, h) + noise(rng), 1e-4));
        ev.pair_counts.push_back(40);
    }
    const std::vector<StructureKind> families{
        StructureKind::Spherical, StructureKind::Exponential, StructureKind::HoleEffectSine};
    for (auto _ : state) benchmark::DoNotOptimize(fit_model(ev, families));
}
BENCHMARK(BM_FitModel)->Unit(benchmark::kMillisecond);

void BM_CnsdCheck(benchmark::State& state) {
    const auto sites = grid_sites(85);
    VariogramModel m;
    m.nugget = 0.05;
    m.structures = {{StructureKind::Exponential, 0.5, 120.0}};
    for (auto _ : state) benchmark::DoNotOptimize(check_cnsd(m, sites, 1000));
}
BENCHMARK(BM_CnsdCheck)->Unit(benchmark::kMillisecond);

}  // namespace
