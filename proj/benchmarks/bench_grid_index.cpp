#include <benchmark/benchmark.h>

#include <vector>

#include "geobi/grid_index.hpp"
#include "geobi/rng.hpp"

namespace {

using geobi::geo::GeoPoint;
using geobi::spatial::GridConfig;
using geobi::spatial::GridIndex;

GridIndex make_index(std::size_t n) {
    GridConfig config;
    config.bounds = {-30.0, -30.0, 30.0, 30.0};
    geobi::SeededUniform rng(29);
    std::vector<GridIndex::Entry> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        entries.emplace_back(i, GeoPoint(-30.0 + rng.next() * 60.0, -30.0 + rng.next() * 60.0));
    }
    return GridIndex::build(std::move(entries), config);
}

void BM_NearestIndexed(benchmark::State& state) {
    const auto index = make_index(static_cast<std::size_t>(state.range(0)));
    const auto k = static_cast<std::size_t>(state.range(1));
    geobi::SeededUniform rng(31);
    for (auto _ : state) {
        const GeoPoint q(-30.0 + rng.next() * 60.0, -30.0 + rng.next() * 60.0);
        benchmark::DoNotOptimize(index.nearest(q, k));
    }
}
BENCHMARK(BM_NearestIndexed)->Args({1000, 1})->Args({10000, 1})->Args({10000, 20});

void BM_NearestBruteForce(benchmark::State& state) {
    const auto index = make_index(static_cast<std::size_t>(state.range(0)));
    const auto& entries = index.entries();
    geobi::SeededUniform rng(31);
    for (auto _ : state) {
        const GeoPoint q(-30.0 + rng.next() * 60.0, -30.0 + rng.next() * 60.0);
        double best = 1e300;
        for (const auto& [id, p] : entries) {
            best = std::min(best, geobi::geo::geodesic_distance(q, p));
        }
        benchmark::DoNotOptimize(best);
    }
}
BENCHMARK(BM_NearestBruteForce)->Arg(1000)->Arg(10000);

}  // namespace
