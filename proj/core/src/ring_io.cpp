#include "geobi/ring_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geobi/errors.hpp"

namespace geobi::io {
namespace {

bool parse_coord(std::string_view text, double& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last && !text.empty();
}

std::vector<std::string> split_tokens(std::string line) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::vector<geo::GeoPoint> parse_wkt_polygon_ring(const std::string& text) {
    const auto open = text.find("((");
    const auto close = text.find("))");
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw MalformedWkt("polygon WKT needs '((' ... '))'");
    }
    const std::string inner = text.substr(open + 2, close - open - 2);
    if (inner.find('(') != std::string::npos) {
        throw MalformedWkt("only a single outer ring is supported");
    }
    std::vector<geo::GeoPoint> ring;
    std::size_t start = 0;
    while (start <= inner.size()) {
        auto end = inner.find(',', start);
        if (end == std::string::npos) end = inner.size();
        std::istringstream pair(inner.substr(start, end - start));
        double lon = 0.0;
        double lat = 0.0;
        if (!(pair >> lon >> lat)) throw MalformedWkt("bad vertex in polygon WKT");
        std::string extra;
        if (pair >> extra) throw MalformedWkt("bad vertex in polygon WKT");
        ring.emplace_back(lon, lat);
        start = end + 1;
        if (end == inner.size()) break;
    }
    return ring;
}

}  // namespace

geo::GeoPolygon load_ring(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path.string());

    std::vector<geo::GeoPoint> ring;
    std::string whole;
    std::string line;
    bool wkt = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (ring.empty() && whole.empty()) {
            std::string head = line.substr(begin, 7);
            std::transform(head.begin(), head.end(), head.begin(),
                           [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
            if (head == "POLYGON") wkt = true;
        }
        if (wkt) {
            whole += line;
            whole += ' ';
            continue;
        }
        const auto tokens = split_tokens(line);
        if (tokens.size() != 2) {
            throw MalformedWkt(path.string() + ": expected 'lon lat' per line, got '" +
                               line.substr(begin) + "'");
        }
        double lon = 0.0;
        double lat = 0.0;
        if (!parse_coord(tokens[0], lon) || !parse_coord(tokens[1], lat)) {
            throw MalformedWkt(path.string() + ": bad coordinate in '" + line.substr(begin) +
                               "'");
        }
        ring.emplace_back(lon, lat);
    }
    if (wkt) ring = parse_wkt_polygon_ring(whole);

    if (ring.size() >= 4 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) {
        throw InvalidPolygon(path.string() + ": fewer than 3 ring vertices");
    }
    return geo::GeoPolygon(std::move(ring));
}

}  // namespace geobi::io
