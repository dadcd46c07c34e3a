#include "geobi/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace geobi::geo {

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

bool lon_in_range(double lon) { return lon >= -180.0 && lon <= 180.0; }
bool lat_in_range(double lat) { return lat >= -90.0 && lat <= 90.0; }

void skip_spaces(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

double parse_coordinate(std::string_view text, std::size_t& pos) {
    skip_spaces(text, pos);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos)
        throw MalformedWkt("expected a decimal coordinate in WKT at offset " + std::to_string(pos));
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

void append_shortest(std::string& out, double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, ptr);
}

// Exact collinearity + bounding-box membership test for "p lies on segment ab".
bool on_segment(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
    const double cross = (b.lon() - a.lon()) * (p.lat() - a.lat()) -
                         (b.lat() - a.lat()) * (p.lon() - a.lon());
    if (cross != 0.0) return false;
    return p.lon() >= std::min(a.lon(), b.lon()) && p.lon() <= std::max(a.lon(), b.lon()) &&
           p.lat() >= std::min(a.lat(), b.lat()) && p.lat() <= std::max(a.lat(), b.lat());
}

}  // namespace

GeoPoint::GeoPoint(double lon, double lat, int srid) : lon_(lon), lat_(lat), srid_(srid) {
    if (!std::isfinite(lon) || !lon_in_range(lon))
        throw OutOfRangeCoordinate("longitude " + std::to_string(lon) + " outside [-180, 180]");
    if (!std::isfinite(lat) || !lat_in_range(lat))
        throw OutOfRangeCoordinate("latitude " + std::to_string(lat) + " outside [-90, 90]");
}

GeoPolygon::GeoPolygon(std::vector<GeoPoint> ring) : ring_(std::move(ring)) {
    if (ring_.size() < 3)
        throw InvalidPolygon("polygon ring needs at least 3 vertices, got " +
                             std::to_string(ring_.size()));
    for (std::size_t i = 0; i < ring_.size(); ++i) {
        const GeoPoint& a = ring_[i];
        const GeoPoint& b = ring_[(i + 1) % ring_.size()];
        if (a.srid() != b.srid())
            throw SridMismatch("polygon vertices mix srids " + std::to_string(a.srid()) +
                               " and " + std::to_string(b.srid()));
        if (a == b)
            throw InvalidPolygon("consecutive duplicate vertex at index " + std::to_string(i) +
                                 "; rings are implicitly closed");
    }
    std::vector<std::pair<double, double>> distinct;
    distinct.reserve(ring_.size());
    for (const GeoPoint& v : ring_) distinct.emplace_back(v.lon(), v.lat());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw InvalidPolygon("polygon ring has fewer than 3 distinct vertices");
}

GeoPoint parse_wkt_point(std::string_view text) {
    std::size_t pos = 0;
    skip_spaces(text, pos);

    static constexpr std::string_view keyword = "POINT";
    if (text.size() - pos < keyword.size())
        throw MalformedWkt("WKT too short for a POINT");
    for (char expected : keyword) {
        if (std::toupper(static_cast<unsigned char>(text[pos])) != expected)
            throw MalformedWkt("expected POINT keyword");
        ++pos;
    }

    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != '(')
        throw MalformedWkt("expected '(' after POINT");
    ++pos;

    const double x = parse_coordinate(text, pos);
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == ',') ++pos;  // comma form POINT(x,y)
    const double y = parse_coordinate(text, pos);

    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != ')')
        throw MalformedWkt("expected ')' closing POINT; coordinate arity must be 2");
    ++pos;
    skip_spaces(text, pos);
    if (pos != text.size())
        throw MalformedWkt("trailing characters after POINT(...)");

    return GeoPoint(x, y);
}

std::string emit_wkt(const GeoPoint& p) {
    std::string out = "POINT(";
    append_shortest(out, p.lon());
    out.push_back(' ');
    append_shortest(out, p.lat());
    out.push_back(')');
    return out;
}

double geodesic_distance(const GeoPoint& a, const GeoPoint& b) {
    if (a.srid() != b.srid())
        throw SridMismatch("distance between srid " + std::to_string(a.srid()) + " and " +
                           std::to_string(b.srid()));

    // Canonical operand order makes the evaluation symmetric to the last bit.
    const GeoPoint* first = &a;
    const GeoPoint* second = &b;
    if (std::pair(b.lon(), b.lat()) < std::pair(a.lon(), a.lat())) std::swap(first, second);

    const double lat1 = deg_to_rad(first->lat());
    const double lat2 = deg_to_rad(second->lat());
    const double dlat = deg_to_rad(second->lat() - first->lat());
    const double dlon = deg_to_rad(second->lon() - first->lon());

    const double sin_dlat = std::sin(dlat / 2.0);
    const double sin_dlon = std::sin(dlon / 2.0);
    double h = sin_dlat * sin_dlat + std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

void validate_planar_region(const GeoPolygon& poly) {
    const std::vector<GeoPoint>& ring = poly.ring();
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const GeoPoint& a = ring[i];
        const GeoPoint& b = ring[(i + 1) % ring.size()];
        if (std::abs(a.lat()) == 90.0 || std::abs(b.lat()) == 90.0)
            throw UnsupportedRegion("polygon touches a pole; planar evaluation is undefined there");
        if (std::abs(a.lon() - b.lon()) > 180.0)
            throw UnsupportedRegion("polygon edge crosses the antimeridian");
    }
}

bool point_in_polygon(const GeoPoint& p, const GeoPolygon& poly) {
    if (p.srid() != poly.srid())
        throw SridMismatch("point srid " + std::to_string(p.srid()) + " vs polygon srid " +
                           std::to_string(poly.srid()));
    validate_planar_region(poly);

    const std::vector<GeoPoint>& ring = poly.ring();
    bool inside = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const GeoPoint& a = ring[i];
        const GeoPoint& b = ring[(i + 1) % ring.size()];
        if (on_segment(p, a, b)) return true;  // boundary counts as inside

        // Half-open rule in latitude avoids double-counting shared vertices.
        if ((a.lat() > p.lat()) != (b.lat() > p.lat())) {
            const double t = (p.lat() - a.lat()) / (b.lat() - a.lat());
            const double x_cross = a.lon() + t * (b.lon() - a.lon());
            if (x_cross > p.lon()) inside = !inside;
        }
    }
    return inside;
}

}  // namespace geobi::geo
