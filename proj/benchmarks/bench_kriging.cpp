#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "windkrige/kriging.hpp"

namespace {

using namespace windkrige;

std::vector<GeoPoint> grid_sites(std::size_t n) {
    std::vector<GeoPoint> sites;
    for (std::size_t i = 0; sites.size() < n; ++i)
        sites.push_back({32.5 + 0.5 * (i / 12), -120.0 + 0.5 * (i % 12)});
    return sites;
}

VariogramModel bench_model() {
    VariogramModel m;
    m.nugget = 0.01;
    m.structures = {{StructureKind::Exponential, 0.4, 150.0}};
    return m;
}

void BM_AssembleAndFactor(benchmark::State& state) {
    const auto sites = grid_sites(static_cast<std::size_t>(state.range(0)));
    const VariogramModel m = bench_model();
    for (auto _ : state) {
        Kriger kriger(m, sites);
        benchmark::DoNotOptimize(kriger.site_count());
    }
}
BENCHMARK(BM_AssembleAndFactor)->Arg(25)->Arg(85);

// One raster cell with the factorization shared, the layout used for maps.
void BM_SurfaceCell(benchmark::State& state) {
    const auto sites = grid_sites(85);
    const Kriger kriger(bench_model(), sites);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> field(1.5, 0.3);
    std::vector<double> y(sites.size());
    for (double& v : y) v = field(rng);

    std::uniform_real_distribution<double> lat(32.5, 36.0), lon(-120.0, -114.5);
    for (auto _ : state) {
        const GeoPoint target{lat(rng), lon(rng)};
        benchmark::DoNotOptimize(kriger.estimate(y, target));
    }
}
BENCHMARK(BM_SurfaceCell);

// Full solve from scratch per target, for comparison with the shared path.
void BM_SolveFromScratch(benchmark::State& state) {
    const auto sites = grid_sites(85);
    const VariogramModel m = bench_model();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> lat(32.5, 36.0), lon(-120.0, -114.5);
    for (auto _ : state) {
        const GeoPoint target{lat(rng), lon(rng)};
        benchmark::DoNotOptimize(solve_ok(assemble_system(m, sites, target)));
    }
}
BENCHMARK(BM_SolveFromScratch);

void BM_Haversine(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(-60.0, 60.0), lon(-179.0, 179.0);
    const GeoPoint a{lat(rng), lon(rng)};
    GeoPoint b{lat(rng), lon(rng)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(haversine_km(a, b));
        b.lon_deg = b.lon_deg >= 179.0 ? -179.0 : b.lon_deg + 1e-3;
    }
}
BENCHMARK(BM_Haversine);

}  // namespace
