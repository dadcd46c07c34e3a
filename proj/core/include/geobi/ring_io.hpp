#pragma once

#include <filesystem>

#include "geobi/geo.hpp"

namespace geobi::io {

/// Reads a polygon ring from a text file. Two forms are accepted:
///
///   - one `lon lat` (or `lon,lat`) vertex per line, `#` comments allowed;
///   - a single WKT `POLYGON((lon lat, lon lat, ...))` outer ring.
///
/// A trailing repeat of the first vertex (closed-ring form) is dropped.
/// Throws IoFailure, MalformedWkt, or InvalidPolygon.
geo::GeoPolygon load_ring(const std::filesystem::path& path);

}  // namespace geobi::io
