#include <benchmark/benchmark.h>

#include <vector>

#include "geobi/geo.hpp"
#include "geobi/rng.hpp"

namespace {

using geobi::geo::GeoPoint;
using geobi::geo::GeoPolygon;

std::vector<GeoPoint> random_points(std::size_t n, std::uint64_t seed) {
    geobi::SeededUniform rng(seed);
    std::vector<GeoPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.emplace_back(-180.0 + rng.next() * 360.0, -90.0 + rng.next() * 180.0);
    }
    return points;
}

void BM_GeodesicDistance(benchmark::State& state) {
    const auto points = random_points(1024, 7);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = points[i % points.size()];
        const auto& b = points[(i + 1) % points.size()];
        benchmark::DoNotOptimize(geobi::geo::geodesic_distance(a, b));
        ++i;
    }
}
BENCHMARK(BM_GeodesicDistance);

void BM_PointInPolygon(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    geobi::SeededUniform rng(11);
    std::vector<GeoPoint> ring;
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n);
        const double radius = 20.0 + 10.0 * rng.next();
        ring.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    const GeoPolygon poly(ring);
    const auto probes = random_points(1024, 13);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geobi::geo::point_in_polygon(probes[i % probes.size()], poly));
        ++i;
    }
}
BENCHMARK(BM_PointInPolygon)->Arg(8)->Arg(64)->Arg(512);

}  // namespace
