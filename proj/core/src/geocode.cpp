#include "geobi/geocode.hpp"

#include <cctype>
#include <cstdint>
#include <string>

#include "geobi/errors.hpp"

namespace geobi::io {
namespace {

std::string normalize(std::string_view address) {
    std::size_t b = 0;
    std::size_t e = address.size();
    while (b < e && std::isspace(static_cast<unsigned char>(address[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(address[e - 1]))) --e;
    std::string out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(address[i]))));
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace

geo::GeoPoint geocode(std::string_view address) {
    const std::string normalized = normalize(address);
    if (normalized.empty()) throw EmptyAddress("geocode: address is empty");
    const std::uint64_t hash = fnv1a64(normalized);
    const double hi = static_cast<double>(hash >> 32) / 4294967296.0;  // [0, 1)
    const double lo = static_cast<double>(hash & 0xffffffffULL) / 4294967296.0;
    const double lon = -180.0 + hi * 360.0;
    const double lat = -85.0 + lo * 170.0;
    return geo::GeoPoint(lon, lat);
}

}  // namespace geobi::io
