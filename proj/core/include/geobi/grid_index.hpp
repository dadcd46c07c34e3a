#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geobi/geo.hpp"

namespace geobi::spatial {

/// Grid density per level: how many cells each parent cell is split into
/// along each axis.
enum class Density : std::uint8_t { Low = 0, Medium = 1, High = 2 };

/// LOW = 4x4, MEDIUM = 8x8, HIGH = 16x16.
int cells_per_axis(Density d);

struct BoundsRect {
    double lon_min = 0.0;
    double lat_min = 0.0;
    double lon_max = 0.0;
    double lat_max = 0.0;

    [[nodiscard]] bool contains(const geo::GeoPoint& p) const {
        return p.lon() >= lon_min && p.lon() <= lon_max && p.lat() >= lat_min &&
               p.lat() <= lat_max;
    }
};

/// Four nested grid levels over a bounding rectangle.
struct GridConfig {
    std::array<Density, 4> levels{Density::High, Density::High, Density::High, Density::High};
    BoundsRect bounds{};

    void validate() const;  // throws InvalidConfig

    /// Cells per axis of the grid formed by levels 1..level (level in [1,4]).
    [[nodiscard]] int axis_cells_through(int level) const;

    /// Cells per axis at the deepest level (product of all four levels).
    [[nodiscard]] int total_axis_cells() const { return axis_cells_through(4); }
};

struct CellCoord {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

using EntryId = std::uint64_t;

struct NearestHit {
    EntryId id;
    double distance_m;

    friend bool operator==(const NearestHit&, const NearestHit&) = default;
};

/// Counters for verifying that the grid actually prunes work.
struct NearestStats {
    std::size_t distance_evaluations = 0;
    std::size_t cells_examined = 0;
};

/// Immutable multi-level grid index over GeoPoints. Points live in their
/// deepest-level cell; coarser levels are key prefixes of the deepest cell
/// coordinate. Build once, query from any number of threads.
class GridIndex {
public:
    using Entry = std::pair<EntryId, geo::GeoPoint>;

    static GridIndex build(std::vector<Entry> points, const GridConfig& config);

    [[nodiscard]] const GridConfig& config() const { return config_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

    /// All entries sorted by ascending id.
    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

    /// Deepest-level cell of a point. Cell intervals are half-open except the
    /// final row/column; out-of-bounds points clamp to the nearest cell.
    [[nodiscard]] CellCoord cell_of(const geo::GeoPoint& p) const;

    /// Cell coordinate at a coarser level (1..4), derived from the deepest
    /// cell by prefix division.
    [[nodiscard]] CellCoord cell_at_level(const geo::GeoPoint& p, int level) const;

    /// The k entries nearest to q by geodesic distance, ascending, ties by
    /// ascending id. Exact: the expanding ring search only stops once no
    /// unvisited cell can beat the current k-th best distance.
    [[nodiscard]] std::vector<NearestHit> nearest(const geo::GeoPoint& q, std::size_t k) const;
    [[nodiscard]] std::vector<NearestHit> nearest(const geo::GeoPoint& q, std::size_t k,
                                                  NearestStats& stats) const;

    /// Ids of all entries contained in the region (boundary inclusive),
    /// ascending. The grid prunes candidate cells; membership is decided by
    /// point_in_polygon.
    [[nodiscard]] std::vector<EntryId> range_query(const geo::GeoPolygon& region) const;

private:
    GridIndex(GridConfig config, std::vector<Entry> entries);

    [[nodiscard]] std::uint64_t pack(CellCoord c) const {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
               static_cast<std::uint32_t>(c.y);
    }

    struct CellRect {
        double lon0, lat0, lon1, lat1;
    };
    [[nodiscard]] CellRect cell_rect(CellCoord c) const;
    [[nodiscard]] double cell_lower_bound(const geo::GeoPoint& q, const CellRect& r) const;
    [[nodiscard]] double outside_box_lower_bound(const geo::GeoPoint& q, std::int32_t bx0,
                                                 std::int32_t by0, std::int32_t bx1,
                                                 std::int32_t by1) const;

    GridConfig config_;
    std::vector<Entry> entries_;  // sorted by id
    // deepest-level cell -> indexes into entries_, ascending
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

/// Builds an index over (id, point) pairs. Throws PointOutOfBounds or
/// DuplicateId; the result is a pure function of the inputs.
GridIndex build_index(std::vector<GridIndex::Entry> points, const GridConfig& config);

}  // namespace geobi::spatial
