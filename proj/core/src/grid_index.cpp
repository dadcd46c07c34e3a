#include "geobi/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace geobi::spatial {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Smallest angular longitude separation between lon and the interval
// [lon0, lon1], in degrees. Accounts for wrap at +-180.
double lon_gap_deg(double lon, double lon0, double lon1) {
    if (lon >= lon0 && lon <= lon1) return 0.0;
    auto angdiff = [](double a, double b) {
        double d = std::abs(a - b);
        return d > 180.0 ? 360.0 - d : d;
    };
    return std::min(angdiff(lon, lon0), angdiff(lon, lon1));
}

// Lower bound on the haversine distance between q and any point whose
// longitude gap is >= gap_deg and whose latitude lies in [lat0, lat1].
// Uses sin^2(theta/2) >= cos(phi_q) * cos(phi_t) * sin^2(dlon/2).
double lon_bound_m(double q_lat_deg, double gap_deg, double lat0, double lat1) {
    if (gap_deg <= 0.0) return 0.0;
    const double cos_q = std::cos(deg_to_rad(q_lat_deg));
    const double cos_min = std::cos(deg_to_rad(std::max(std::abs(lat0), std::abs(lat1))));
    const double s = std::sqrt(std::clamp(cos_q * cos_min, 0.0, 1.0)) *
                     std::sin(deg_to_rad(gap_deg) / 2.0);
    return 2.0 * geo::kEarthRadiusMeters * std::asin(std::clamp(s, 0.0, 1.0));
}

double lat_bound_m(double gap_deg) {
    return gap_deg <= 0.0 ? 0.0 : geo::kEarthRadiusMeters * deg_to_rad(gap_deg);
}

// Max-heap ordering on (distance, id): the worst of the current best-k sits
// on top.
struct HitWorse {
    bool operator()(const NearestHit& a, const NearestHit& b) const {
        if (a.distance_m != b.distance_m) return a.distance_m < b.distance_m;
        return a.id < b.id;
    }
};

}  // namespace

int cells_per_axis(Density d) {
    switch (d) {
        case Density::Low: return 4;
        case Density::Medium: return 8;
        case Density::High: return 16;
    }
    throw InvalidConfig("unknown grid density");
}

void GridConfig::validate() const {
    if (!(bounds.lon_min < bounds.lon_max) || !(bounds.lat_min < bounds.lat_max))
        throw InvalidConfig("grid bounds must be non-degenerate (min < max per axis)");
    for (Density d : levels) cells_per_axis(d);
}

int GridConfig::axis_cells_through(int level) const {
    if (level < 1 || level > 4) throw InvalidConfig("grid level must be in [1, 4]");
    int n = 1;
    for (int i = 0; i < level; ++i) n *= cells_per_axis(levels[static_cast<std::size_t>(i)]);
    return n;
}

GridIndex::GridIndex(GridConfig config, std::vector<Entry> entries)
    : config_(config), entries_(std::move(entries)) {
    cells_.reserve(entries_.size());
    for (std::uint32_t i = 0; i < entries_.size(); ++i) {
        cells_[pack(cell_of(entries_[i].second))].push_back(i);
    }
}

GridIndex GridIndex::build(std::vector<Entry> points, const GridConfig& config) {
    config.validate();
    for (const Entry& e : points) {
        if (!config.bounds.contains(e.second))
            throw PointOutOfBounds("point id " + std::to_string(e.first) +
                                   " lies outside the grid bounds");
    }
    std::sort(points.begin(), points.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first == points[i - 1].first)
            throw DuplicateId("duplicate entry id " + std::to_string(points[i].first));
    }
    return GridIndex(config, std::move(points));
}

GridIndex build_index(std::vector<GridIndex::Entry> points, const GridConfig& config) {
    return GridIndex::build(std::move(points), config);
}

CellCoord GridIndex::cell_of(const geo::GeoPoint& p) const {
    const BoundsRect& b = config_.bounds;
    const int w = config_.total_axis_cells();
    const double fx = std::clamp((p.lon() - b.lon_min) / (b.lon_max - b.lon_min), 0.0, 1.0);
    const double fy = std::clamp((p.lat() - b.lat_min) / (b.lat_max - b.lat_min), 0.0, 1.0);
    // Half-open cells; the top row/right column absorb the closed boundary.
    const auto cx = std::min(static_cast<std::int32_t>(fx * w), w - 1);
    const auto cy = std::min(static_cast<std::int32_t>(fy * w), w - 1);
    return CellCoord{cx, cy};
}

CellCoord GridIndex::cell_at_level(const geo::GeoPoint& p, int level) const {
    const CellCoord deepest = cell_of(p);
    const int shrink = config_.total_axis_cells() / config_.axis_cells_through(level);
    return CellCoord{deepest.x / shrink, deepest.y / shrink};
}

GridIndex::CellRect GridIndex::cell_rect(CellCoord c) const {
    const BoundsRect& b = config_.bounds;
    const double w = config_.total_axis_cells();
    const double dlon = (b.lon_max - b.lon_min) / w;
    const double dlat = (b.lat_max - b.lat_min) / w;
    return CellRect{b.lon_min + c.x * dlon, b.lat_min + c.y * dlat,
                    b.lon_min + (c.x + 1) * dlon, b.lat_min + (c.y + 1) * dlat};
}

double GridIndex::cell_lower_bound(const geo::GeoPoint& q, const CellRect& r) const {
    const double lat_gap = std::max({0.0, r.lat0 - q.lat(), q.lat() - r.lat1});
    const double lon_gap = lon_gap_deg(q.lon(), r.lon0, r.lon1);
    return std::max(lat_bound_m(lat_gap), lon_bound_m(q.lat(), lon_gap, r.lat0, r.lat1));
}

// Lower bound on the distance from q to any point of the grid lying outside
// the cell box [bx0, bx1] x [by0, by1]. Each side of the complement is
// bounded separately; the minimum over sides is a valid bound for the union.
double GridIndex::outside_box_lower_bound(const geo::GeoPoint& q, std::int32_t bx0,
                                          std::int32_t by0, std::int32_t bx1,
                                          std::int32_t by1) const {
    const BoundsRect& b = config_.bounds;
    const int w = config_.total_axis_cells();
    const double dlon = (b.lon_max - b.lon_min) / w;
    const double dlat = (b.lat_max - b.lat_min) / w;
    const double box_lon0 = b.lon_min + bx0 * dlon;
    const double box_lon1 = b.lon_min + (bx1 + 1) * dlon;
    const double box_lat0 = b.lat_min + by0 * dlat;
    const double box_lat1 = b.lat_min + (by1 + 1) * dlat;

    double bound = kInf;
    if (by0 > 0) bound = std::min(bound, lat_bound_m(q.lat() - box_lat0));
    if (by1 < w - 1) bound = std::min(bound, lat_bound_m(box_lat1 - q.lat()));
    if (bx0 > 0) {
        const double gap = lon_gap_deg(q.lon(), b.lon_min, box_lon0);
        bound = std::min(bound, lon_bound_m(q.lat(), gap, b.lat_min, b.lat_max));
    }
    if (bx1 < w - 1) {
        const double gap = lon_gap_deg(q.lon(), box_lon1, b.lon_max);
        bound = std::min(bound, lon_bound_m(q.lat(), gap, b.lat_min, b.lat_max));
    }
    return bound;
}

std::vector<NearestHit> GridIndex::nearest(const geo::GeoPoint& q, std::size_t k) const {
    NearestStats stats;
    return nearest(q, k, stats);
}

std::vector<NearestHit> GridIndex::nearest(const geo::GeoPoint& q, std::size_t k,
                                           NearestStats& stats) const {
    if (k == 0) throw InvalidConfig("nearest requires k >= 1");
    stats = NearestStats{};
    std::vector<NearestHit> best;
    if (entries_.empty()) return best;

    const HitWorse worse;
    auto offer = [&](std::uint32_t entry_index) {
        const Entry& e = entries_[entry_index];
        ++stats.distance_evaluations;
        const NearestHit hit{e.first, geo::geodesic_distance(q, e.second)};
        if (best.size() < k) {
            best.push_back(hit);
            std::push_heap(best.begin(), best.end(), worse);
        } else if (worse(hit, best.front())) {
            std::pop_heap(best.begin(), best.end(), worse);
            best.back() = hit;
            std::push_heap(best.begin(), best.end(), worse);
        }
    };
    std::size_t occupied_seen = 0;
    auto visit_cell = [&](CellCoord c) {
        ++stats.cells_examined;
        auto it = cells_.find(pack(c));
        if (it == cells_.end()) return;
        ++occupied_seen;
        for (std::uint32_t idx : it->second) offer(idx);
    };

    const int w = config_.total_axis_cells();
    const CellCoord origin = cell_of(q);

    auto clamp_box = [&](std::int32_t r, std::int32_t& x0, std::int32_t& y0, std::int32_t& x1,
                         std::int32_t& y1) {
        x0 = std::max(origin.x - r, 0);
        y0 = std::max(origin.y - r, 0);
        x1 = std::min(origin.x + r, w - 1);
        y1 = std::min(origin.y + r, w - 1);
    };

    for (std::int32_t r = 0;; ++r) {
        std::int32_t x0, y0, x1, y1;
        clamp_box(r, x0, y0, x1, y1);
        const std::int64_t box_cells = static_cast<std::int64_t>(x1 - x0 + 1) * (y1 - y0 + 1);

        // Cells on this ring = box(r) minus box(r-1), computed without
        // walking empty interior cells.
        std::int64_t ring_cells = box_cells;
        std::int32_t px0 = 0, py0 = 0, px1 = -1, py1 = -1;
        if (r > 0) {
            clamp_box(r - 1, px0, py0, px1, py1);
            ring_cells -= static_cast<std::int64_t>(px1 - px0 + 1) * (py1 - py0 + 1);
        }

        if (ring_cells > 0) {
            // Sparse guard: once the swept box holds more cells than the
            // index has occupied cells in total (or the remaining occupied
            // cells are fewer than this ring), walking empty cells costs
            // more than bounding every unvisited occupied cell directly.
            const auto occupied_remaining =
                static_cast<std::int64_t>(cells_.size() - occupied_seen);
            if (box_cells > static_cast<std::int64_t>(cells_.size()) ||
                ring_cells > occupied_remaining) {
                std::vector<std::pair<double, const std::vector<std::uint32_t>*>> pending;
                pending.reserve(static_cast<std::size_t>(std::max<std::int64_t>(
                    occupied_remaining, 0)));
                for (const auto& [key, indices] : cells_) {
                    const CellCoord c{static_cast<std::int32_t>(key >> 32),
                                      static_cast<std::int32_t>(key & 0xffffffffu)};
                    if (c.x >= px0 && c.x <= px1 && c.y >= py0 && c.y <= py1) continue;
                    pending.emplace_back(cell_lower_bound(q, cell_rect(c)), &indices);
                }
                // Min-heap on the bound: cells are examined best-first and
                // the loop stops at the first one that cannot improve.
                const auto farther = [](const auto& a, const auto& b) {
                    return a.first > b.first;
                };
                std::make_heap(pending.begin(), pending.end(), farther);
                while (!pending.empty()) {
                    std::pop_heap(pending.begin(), pending.end(), farther);
                    const auto [bound, indices] = pending.back();
                    pending.pop_back();
                    if (best.size() == k && bound > best.front().distance_m) break;
                    ++stats.cells_examined;
                    for (std::uint32_t idx : *indices) offer(idx);
                }
                break;
            }

            if (r == 0) {
                visit_cell(origin);
            } else {
                for (std::int32_t x = x0; x <= x1; ++x) {
                    if (origin.y - r >= 0) visit_cell({x, origin.y - r});
                    if (origin.y + r <= w - 1) visit_cell({x, origin.y + r});
                }
                const std::int32_t inner_y0 = std::max(origin.y - r + 1, 0);
                const std::int32_t inner_y1 = std::min(origin.y + r - 1, w - 1);
                for (std::int32_t y = inner_y0; y <= inner_y1; ++y) {
                    if (origin.x - r >= 0) visit_cell({origin.x - r, y});
                    if (origin.x + r <= w - 1) visit_cell({origin.x + r, y});
                }
            }
        }

        // Everything inside the grid has been visited.
        if (x0 == 0 && y0 == 0 && x1 == w - 1 && y1 == w - 1) break;

        // Stop once the k best are strictly better than anything an
        // unvisited cell could hold.
        if (best.size() == k &&
            best.front().distance_m < outside_box_lower_bound(q, x0, y0, x1, y1))
            break;
    }

    std::sort(best.begin(), best.end(), worse);
    return best;
}

std::vector<EntryId> GridIndex::range_query(const geo::GeoPolygon& region) const {
    geo::validate_planar_region(region);

    std::vector<EntryId> out;
    if (entries_.empty()) return out;

    double lon0 = kInf, lat0 = kInf, lon1 = -kInf, lat1 = -kInf;
    for (const geo::GeoPoint& v : region.ring()) {
        lon0 = std::min(lon0, v.lon());
        lat0 = std::min(lat0, v.lat());
        lon1 = std::max(lon1, v.lon());
        lat1 = std::max(lat1, v.lat());
    }
    const BoundsRect& b = config_.bounds;
    if (lon1 < b.lon_min || lon0 > b.lon_max || lat1 < b.lat_min || lat0 > b.lat_max)
        return out;

    const CellCoord lo = cell_of(geo::GeoPoint(std::clamp(lon0, b.lon_min, b.lon_max),
                                               std::clamp(lat0, b.lat_min, b.lat_max)));
    const CellCoord hi = cell_of(geo::GeoPoint(std::clamp(lon1, b.lon_min, b.lon_max),
                                               std::clamp(lat1, b.lat_min, b.lat_max)));

    auto test_indices = [&](const std::vector<std::uint32_t>& indices) {
        for (std::uint32_t idx : indices) {
            const Entry& e = entries_[idx];
            if (geo::point_in_polygon(e.second, region)) out.push_back(e.first);
        }
    };

    const std::int64_t rect_cells =
        static_cast<std::int64_t>(hi.x - lo.x + 1) * (hi.y - lo.y + 1);
    if (rect_cells > static_cast<std::int64_t>(cells_.size())) {
        for (const auto& [key, indices] : cells_) {
            const CellCoord c{static_cast<std::int32_t>(key >> 32),
                              static_cast<std::int32_t>(key & 0xffffffffu)};
            if (c.x < lo.x || c.x > hi.x || c.y < lo.y || c.y > hi.y) continue;
            test_indices(indices);
        }
    } else {
        for (std::int32_t x = lo.x; x <= hi.x; ++x) {
            for (std::int32_t y = lo.y; y <= hi.y; ++y) {
                auto it = cells_.find(pack({x, y}));
                if (it != cells_.end()) test_indices(it->second);
            }
        }
    }

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace geobi::spatial
