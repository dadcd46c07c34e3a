#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "geobi/geo.hpp"
#include "oracles.hpp"

using namespace geobi;
using geo::GeoPoint;
using geo::GeoPolygon;

namespace {

GeoPolygon unit_square() {
    return GeoPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

/// Convex polygon: n points on a circle visited in angular order.
GeoPolygon random_convex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> center_lon(-60.0, 60.0);
    std::uniform_real_distribution<double> center_lat(-40.0, 40.0);
    std::uniform_real_distribution<double> radius(0.5, 8.0);
    std::uniform_int_distribution<int> sides(3, 9);
    const double clon = center_lon(rng);
    const double clat = center_lat(rng);
    const double r = radius(rng);
    const int n = sides(rng);
    std::vector<double> angles(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto& a : angles) a = angle(rng);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    if (angles.size() < 3) return random_convex(rng);
    std::vector<GeoPoint> ring;
    ring.reserve(angles.size());
    for (const double a : angles) {
        ring.emplace_back(clon + r * std::cos(a), clat + r * std::sin(a));
    }
    return GeoPolygon(std::move(ring));
}

}  // namespace

TEST_CASE("geo point construction validates range") {
    const GeoPoint p(30.0, 10.0);
    CHECK(p.lon() == 30.0);
    CHECK(p.lat() == 10.0);
    CHECK(p.srid() == geo::kSridWgs84);

    CHECK_NOTHROW(GeoPoint(-180.0, -90.0));
    CHECK_NOTHROW(GeoPoint(180.0, 90.0));
    CHECK_THROWS_AS(GeoPoint(180.001, 0.0), OutOfRangeCoordinate);
    CHECK_THROWS_AS(GeoPoint(0.0, -90.001), OutOfRangeCoordinate);
    CHECK_THROWS_AS(GeoPoint(std::nan(""), 0.0), OutOfRangeCoordinate);
}

TEST_CASE("wkt point parsing") {
    const auto p = geo::parse_wkt_point("POINT(30 10)");
    CHECK(p.lon() == 30.0);
    CHECK(p.lat() == 10.0);
    CHECK(p.srid() == 4326);

    CHECK(geo::parse_wkt_point("  point ( -0.5 , 42 )  ").lon() == -0.5);
    CHECK(geo::parse_wkt_point("Point(30,10)").lat() == 10.0);

    CHECK_THROWS_AS(geo::parse_wkt_point("POINT(200 10)"), OutOfRangeCoordinate);
    CHECK_THROWS_AS(geo::parse_wkt_point("POINT(30)"), MalformedWkt);
    CHECK_THROWS_AS(geo::parse_wkt_point("POINT 30 10"), MalformedWkt);
    CHECK_THROWS_AS(geo::parse_wkt_point("LINESTRING(0 0, 1 1)"), MalformedWkt);
    CHECK_THROWS_AS(geo::parse_wkt_point(""), MalformedWkt);
    CHECK_THROWS_AS(geo::parse_wkt_point("POINT(30 10) x"), MalformedWkt);
}

TEST_CASE("wkt emission uses shortest form") {
    CHECK(geo::emit_wkt(GeoPoint(30.0, 10.0)) == "POINT(30 10)");
    CHECK(geo::emit_wkt(GeoPoint(-0.5, 42.125)) == "POINT(-0.5 42.125)");
}

TEST_CASE("wkt round trip is exact on random points") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    for (int i = 0; i < 10'000; ++i) {
        const GeoPoint p(lon(rng), lat(rng));
        const GeoPoint back = geo::parse_wkt_point(geo::emit_wkt(p));
        REQUIRE(back.lon() == p.lon());
        REQUIRE(back.lat() == p.lat());
    }
}

TEST_CASE("geodesic distance closed forms") {
    const GeoPoint a(12.5, -33.25);
    CHECK(geo::geodesic_distance(a, a) == 0.0);

    const double pi_r = std::numbers::pi * geo::kEarthRadiusMeters;
    CHECK(std::fabs(geo::geodesic_distance(GeoPoint(0, 0), GeoPoint(180, 0)) - pi_r) < 1e-3);
    CHECK(std::fabs(geo::geodesic_distance(GeoPoint(0, -90), GeoPoint(0, 90)) - pi_r) < 1e-3);

    const double one_degree = geo::kEarthRadiusMeters * std::numbers::pi / 180.0;
    CHECK(std::fabs(geo::geodesic_distance(GeoPoint(0, 0), GeoPoint(1, 0)) - one_degree) < 1e-3);
}

TEST_CASE("geodesic distance rejects mixed srids") {
    const GeoPoint a(0.0, 0.0);
    const GeoPoint b(1.0, 1.0, 9999);
    CHECK_THROWS_AS(geo::geodesic_distance(a, b), SridMismatch);
}

TEST_CASE("geodesic distance is exactly symmetric") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    for (int i = 0; i < 10'000; ++i) {
        const GeoPoint a(lon(rng), lat(rng));
        const GeoPoint b(lon(rng), lat(rng));
        REQUIRE(geo::geodesic_distance(a, b) == geo::geodesic_distance(b, a));
    }
}

TEST_CASE("geodesic distance satisfies the triangle inequality") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    for (int i = 0; i < 5'000; ++i) {
        const GeoPoint a(lon(rng), lat(rng));
        const GeoPoint b(lon(rng), lat(rng));
        const GeoPoint c(lon(rng), lat(rng));
        const double direct = geo::geodesic_distance(a, c);
        const double via = geo::geodesic_distance(a, b) + geo::geodesic_distance(b, c);
        REQUIRE(direct <= via * (1.0 + 1e-6) + 1e-6);
    }
}

TEST_CASE("polygon construction") {
    CHECK_NOTHROW(unit_square());
    CHECK_THROWS_AS(GeoPolygon({{0, 0}, {1, 1}}), InvalidPolygon);
    CHECK_THROWS_AS(GeoPolygon({{0, 0}, {0, 0}, {1, 1}, {0, 1}}), InvalidPolygon);
    CHECK_THROWS_AS(GeoPolygon({{0, 0}, GeoPoint(1, 0, 9999), {1, 1}}), SridMismatch);
}

TEST_CASE("point in polygon on the unit square") {
    const auto square = unit_square();
    CHECK(geo::point_in_polygon(GeoPoint(0.5, 0.5), square));
    CHECK_FALSE(geo::point_in_polygon(GeoPoint(2.0, 2.0), square));
    CHECK(geo::point_in_polygon(GeoPoint(1.0, 0.5), square));  // edge
    CHECK(geo::point_in_polygon(GeoPoint(0.0, 0.0), square));  // vertex
    CHECK_FALSE(geo::point_in_polygon(GeoPoint(-0.0001, 0.5), square));
}

TEST_CASE("unsupported regions are rejected") {
    const GeoPolygon antimeridian({{179.0, 0.0}, {-179.0, 0.0}, {179.0, 2.0}});
    CHECK_THROWS_AS(geo::validate_planar_region(antimeridian), UnsupportedRegion);
    CHECK_THROWS_AS(geo::point_in_polygon(GeoPoint(0, 0), antimeridian), UnsupportedRegion);

    const GeoPolygon polar({{0.0, 89.0}, {120.0, 89.0}, {60.0, 90.0}});
    CHECK_THROWS_AS(geo::validate_planar_region(polar), UnsupportedRegion);

    CHECK_NOTHROW(geo::validate_planar_region(unit_square()));
}

TEST_CASE("point in polygon rejects mixed srids") {
    const auto square = unit_square();
    CHECK_THROWS_AS(geo::point_in_polygon(GeoPoint(0.5, 0.5, 9999), square), SridMismatch);
}

TEST_CASE("point in polygon agrees with the winding oracle") {
    std::mt19937_64 rng(20240812);
    std::uniform_real_distribution<double> jitter(-12.0, 12.0);
    int checked = 0;
    while (checked < 10'000) {
        const auto poly = random_convex(rng);
        const auto& ring = poly.ring();
        for (int i = 0; i < 20 && checked < 10'000; ++i) {
            const GeoPoint q(std::clamp(ring[0].lon() + jitter(rng), -180.0, 180.0),
                             std::clamp(ring[0].lat() + jitter(rng), -90.0, 90.0));
            if (testing::on_boundary(q, poly)) continue;
            REQUIRE(geo::point_in_polygon(q, poly) == testing::winding_inside(q, poly));
            ++checked;
        }
    }
}
