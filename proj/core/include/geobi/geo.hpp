#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geobi/errors.hpp"

namespace geobi::geo {

/// GPS longitude/latitude spatial reference.
inline constexpr int kSridWgs84 = 4326;

/// Mean earth radius of the sphere model, meters.
inline constexpr double kEarthRadiusMeters = 6'371'000.0;

/// A longitude/latitude position. Coordinates are degrees; longitude in
/// [-180, 180], latitude in [-90, 90]. Construction rejects anything else.
class GeoPoint {
public:
    GeoPoint(double lon, double lat, int srid = kSridWgs84);

    [[nodiscard]] double lon() const { return lon_; }
    [[nodiscard]] double lat() const { return lat_; }
    [[nodiscard]] int srid() const { return srid_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lon_;
    double lat_;
    int srid_;
};

/// A simple polygon given as an ordered ring of >= 3 distinct vertices.
/// The ring is implicitly closed: the last edge joins the final vertex back
/// to the first. Do not repeat the first vertex at the end.
class GeoPolygon {
public:
    explicit GeoPolygon(std::vector<GeoPoint> ring);

    [[nodiscard]] const std::vector<GeoPoint>& ring() const { return ring_; }
    [[nodiscard]] int srid() const { return ring_.front().srid(); }

private:
    std::vector<GeoPoint> ring_;
};

/// Parses `POINT(<x> <y>)` or `POINT(<x>,<y>)` where x is longitude and y is
/// latitude (the axis order SQL Server's geography text form uses). The
/// keyword is case-insensitive and surrounding whitespace is tolerated.
///
/// Throws MalformedWkt or OutOfRangeCoordinate.
GeoPoint parse_wkt_point(std::string_view text);

/// Canonical WKT: `POINT(<lon> <lat>)`, space separated, shortest decimal
/// rendering that round-trips bit-exactly through parse_wkt_point.
std::string emit_wkt(const GeoPoint& p);

/// Great-circle (haversine) distance in meters on a sphere of radius
/// kEarthRadiusMeters. Operands are ordered canonically before evaluation so
/// the result is bit-identical under argument swap.
///
/// Throws SridMismatch.
double geodesic_distance(const GeoPoint& a, const GeoPoint& b);

/// Checks that a polygon is usable for planar lon/lat evaluation: no edge
/// crossing the antimeridian (|dlon| > 180) and no vertex on a pole.
///
/// Throws UnsupportedRegion.
void validate_planar_region(const GeoPolygon& poly);

/// Even-odd containment test evaluated in planar lon/lat space; points on
/// the boundary count as inside.
///
/// Throws SridMismatch, UnsupportedRegion (via validate_planar_region).
bool point_in_polygon(const GeoPoint& p, const GeoPolygon& poly);

}  // namespace geobi::geo
