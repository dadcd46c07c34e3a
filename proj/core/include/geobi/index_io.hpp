#pragma once

#include <filesystem>

#include "geobi/grid_index.hpp"

namespace geobi::io {

/// Writes a grid index to a versioned little-endian binary file:
/// magic "GBIX", format version, the four level densities, the bounding
/// rectangle, then the (id, lon, lat) entries in ascending id order.
/// Throws IoFailure.
void save_index(const spatial::GridIndex& index, const std::filesystem::path& path);

/// Rebuilds an index saved by save_index. Throws IoFailure on unreadable
/// files and MalformedIndexFile on bad magic, unknown version, truncation,
/// or trailing bytes.
spatial::GridIndex load_index(const std::filesystem::path& path);

}  // namespace geobi::io
