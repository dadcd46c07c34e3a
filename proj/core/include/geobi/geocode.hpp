#pragma once

#include <string_view>

#include "geobi/geo.hpp"

namespace geobi::io {

/// Deterministic offline geocoder. Hashes the normalized address (trimmed,
/// lowercased) and spreads the bits over lon [-180, 180) and lat [-85, 85),
/// so the same address always maps to the same point and nearby spellings
/// do not collide in practice. Throws EmptyAddress when nothing remains
/// after trimming.
geo::GeoPoint geocode(std::string_view address);

}  // namespace geobi::io
