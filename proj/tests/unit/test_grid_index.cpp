#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "geobi/grid_index.hpp"
#include "oracles.hpp"

using namespace geobi;
using spatial::BoundsRect;
using spatial::Density;
using spatial::GridConfig;
using spatial::GridIndex;

namespace {

GridConfig box_config(double lon0, double lat0, double lon1, double lat1) {
    GridConfig c;
    c.bounds = {lon0, lat0, lon1, lat1};
    return c;
}

std::vector<GridIndex::Entry> random_entries(std::size_t n, const BoundsRect& b,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lon(b.lon_min, b.lon_max);
    std::uniform_real_distribution<double> lat(b.lat_min, b.lat_max);
    std::vector<GridIndex::Entry> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        entries.emplace_back(i + 1, geo::GeoPoint(lon(rng), lat(rng)));
    }
    return entries;
}

geo::GeoPolygon rect_ring(double lon0, double lat0, double lon1, double lat1) {
    return geo::GeoPolygon(
        {{lon0, lat0}, {lon1, lat0}, {lon1, lat1}, {lon0, lat1}});
}

}  // namespace

TEST_CASE("density cell counts") {
    CHECK(spatial::cells_per_axis(Density::Low) == 4);
    CHECK(spatial::cells_per_axis(Density::Medium) == 8);
    CHECK(spatial::cells_per_axis(Density::High) == 16);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(GridIndex::build({}, box_config(10, 0, -10, 10)), InvalidConfig);
    CHECK_THROWS_AS(GridIndex::build({}, box_config(0, 10, 10, -10)), InvalidConfig);
    CHECK_NOTHROW(GridIndex::build({}, box_config(-10, -10, 10, 10)));
}

TEST_CASE("empty index") {
    const auto index = GridIndex::build({}, box_config(-10, -10, 10, 10));
    CHECK(index.size() == 0);
    CHECK(index.nearest(geo::GeoPoint(0, 0), 3).empty());
    CHECK(index.range_query(rect_ring(-10, -10, 10, 10)).empty());
    CHECK_THROWS_AS(index.nearest(geo::GeoPoint(0, 0), 0), InvalidConfig);
}

TEST_CASE("single point lands in the center cell of level 1") {
    auto config = box_config(-10, -10, 10, 10);
    config.levels = {Density::High, Density::High, Density::High, Density::High};
    const auto index =
        GridIndex::build({{7, geo::GeoPoint(0.0, 0.0)}}, config);
    const auto cell = index.cell_at_level(geo::GeoPoint(0.0, 0.0), 1);
    CHECK(cell.x == 8);
    CHECK(cell.y == 8);

    const auto hits = index.nearest(geo::GeoPoint(1.0, 1.0), 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].id == 7);
    CHECK(hits[0].distance_m ==
          geo::geodesic_distance(geo::GeoPoint(1.0, 1.0), geo::GeoPoint(0.0, 0.0)));
}

TEST_CASE("build rejects out-of-bounds points and duplicate ids") {
    auto config = box_config(-10, -10, 10, 10);
    CHECK_THROWS_AS(GridIndex::build({{1, geo::GeoPoint(11.0, 0.0)}}, config),
                    PointOutOfBounds);
    CHECK_THROWS_AS(GridIndex::build(
                        {{1, geo::GeoPoint(0.0, 0.0)}, {1, geo::GeoPoint(1.0, 1.0)}}, config),
                    DuplicateId);
}

TEST_CASE("every inserted point is retrievable through a full-bounds range query") {
    const auto config = box_config(-30, -20, 30, 20);
    auto entries = random_entries(10'000, config.bounds, 42);
    const auto index = GridIndex::build(entries, config);
    CHECK(index.size() == 10'000);

    const auto ids = index.range_query(rect_ring(-30, -20, 30, 20));
    REQUIRE(ids.size() == 10'000);
    for (std::size_t i = 0; i < ids.size(); ++i) REQUIRE(ids[i] == i + 1);
}

TEST_CASE("identical positions tie-break by ascending id") {
    const auto config = box_config(-10, -10, 10, 10);
    const geo::GeoPoint p(2.0, 2.0);
    const auto index = GridIndex::build({{9, p}, {3, p}, {5, p}}, config);
    const auto hits = index.nearest(geo::GeoPoint(0.0, 0.0), 3);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].id == 3);
    CHECK(hits[1].id == 5);
    CHECK(hits[2].id == 9);
    CHECK(hits[0].distance_m == hits[2].distance_m);
}

TEST_CASE("nearest matches brute force on random data") {
    const auto config = box_config(-30, -20, 30, 20);
    const auto entries = random_entries(1'000, config.bounds, 99);
    const auto index = GridIndex::build(entries, config);

    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> lon(-35.0, 35.0);
    std::uniform_real_distribution<double> lat(-25.0, 25.0);
    for (int q = 0; q < 100; ++q) {
        const geo::GeoPoint query(lon(rng), lat(rng));
        const auto got = index.nearest(query, 5);
        const auto want = testing::brute_nearest(entries, query, 5);
        REQUIRE(got == want);
    }
}

TEST_CASE("k larger than the index returns everything") {
    const auto config = box_config(-10, -10, 10, 10);
    const auto entries = random_entries(17, config.bounds, 4);
    const auto index = GridIndex::build(entries, config);
    const auto hits = index.nearest(geo::GeoPoint(0, 0), 50);
    CHECK(hits.size() == 17);
    CHECK(hits == testing::brute_nearest(entries, geo::GeoPoint(0, 0), 50));
}

TEST_CASE("nearest prefix property: k results are the head of k+1 results") {
    const auto config = box_config(-30, -20, 30, 20);
    const auto entries = random_entries(500, config.bounds, 17);
    const auto index = GridIndex::build(entries, config);

    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> lon(-30.0, 30.0);
    std::uniform_real_distribution<double> lat(-20.0, 20.0);
    for (int q = 0; q < 50; ++q) {
        const geo::GeoPoint query(lon(rng), lat(rng));
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto shorter = index.nearest(query, k);
            auto longer = index.nearest(query, k + 1);
            longer.resize(k);
            REQUIRE(shorter == longer);
        }
    }
}

TEST_CASE("range query matches the winding oracle on random regions") {
    const auto config = box_config(-30, -20, 30, 20);
    const auto entries = random_entries(2'000, config.bounds, 55);
    const auto index = GridIndex::build(entries, config);

    CHECK(index.range_query(rect_ring(40, -20, 50, 20)).empty());

    std::mt19937_64 rng(56);
    std::uniform_real_distribution<double> lon(-28.0, 20.0);
    std::uniform_real_distribution<double> lat(-18.0, 12.0);
    std::uniform_real_distribution<double> extent(0.5, 9.0);
    for (int q = 0; q < 50; ++q) {
        const double lon0 = lon(rng);
        const double lat0 = lat(rng);
        const double w = extent(rng);
        const double h = extent(rng);
        const geo::GeoPolygon region(
            {{lon0, lat0}, {lon0 + w, lat0}, {lon0 + w, lat0 + h}, {lon0, lat0 + h}});
        REQUIRE(index.range_query(region) == testing::brute_range(entries, region));
    }
}

TEST_CASE("rebuilding from shuffled input gives identical results") {
    const auto config = box_config(-30, -20, 30, 20);
    auto entries = random_entries(800, config.bounds, 77);
    const auto a = GridIndex::build(entries, config);

    std::mt19937_64 rng(78);
    std::shuffle(entries.begin(), entries.end(), rng);
    const auto b = GridIndex::build(entries, config);

    CHECK(a.entries() == b.entries());
    std::uniform_real_distribution<double> lon(-30.0, 30.0);
    std::uniform_real_distribution<double> lat(-20.0, 20.0);
    for (int q = 0; q < 25; ++q) {
        const geo::GeoPoint query(lon(rng), lat(rng));
        REQUIRE(a.nearest(query, 4) == b.nearest(query, 4));
    }
}

TEST_CASE("nearest never evaluates more distances than a full scan") {
    const auto config = box_config(-30, -20, 30, 20);
    const auto entries = random_entries(5'000, config.bounds, 31);
    const auto index = GridIndex::build(entries, config);

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> lon(-30.0, 30.0);
    std::uniform_real_distribution<double> lat(-20.0, 20.0);
    for (int q = 0; q < 200; ++q) {
        spatial::NearestStats stats;
        const geo::GeoPoint query(lon(rng), lat(rng));
        (void)index.nearest(query, 5, stats);
        REQUIRE(stats.distance_evaluations <= index.size());
    }
}

TEST_CASE("mixed density levels still give exact answers") {
    GridConfig config;
    config.bounds = {-30, -20, 30, 20};
    config.levels = {Density::Low, Density::Medium, Density::High, Density::Low};
    const auto entries = random_entries(600, config.bounds, 64);
    const auto index = GridIndex::build(entries, config);
    CHECK(config.total_axis_cells() == 4 * 8 * 16 * 4);

    std::mt19937_64 rng(65);
    std::uniform_real_distribution<double> lon(-30.0, 30.0);
    std::uniform_real_distribution<double> lat(-20.0, 20.0);
    for (int q = 0; q < 50; ++q) {
        const geo::GeoPoint query(lon(rng), lat(rng));
        REQUIRE(index.nearest(query, 3) == testing::brute_nearest(entries, query, 3));
    }
}
