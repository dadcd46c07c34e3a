#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "geobi/geo.hpp"
#include "geobi/grid_index.hpp"
#include "geobi/hierarchy.hpp"

namespace geobi::testing {

/// Winding-number containment, boundary inclusive. Written independently of
/// the library's even-odd ray cast; for simple polygons both rules agree.
bool winding_inside(const geo::GeoPoint& p, const geo::GeoPolygon& poly);

/// Exact point-on-boundary test (vertex or edge segment).
bool on_boundary(const geo::GeoPoint& p, const geo::GeoPolygon& poly);

/// Full linear-scan k-nearest: orders every entry by (distance, id) and
/// returns the first k.
std::vector<spatial::NearestHit> brute_nearest(
    const std::vector<spatial::GridIndex::Entry>& entries, const geo::GeoPoint& q,
    std::size_t k);

/// Linear-scan region filter using the winding oracle, ids ascending.
std::vector<spatial::EntryId> brute_range(
    const std::vector<spatial::GridIndex::Entry>& entries, const geo::GeoPolygon& region);

struct LevelsOracle {
    std::map<hierarchy::EmpId, std::size_t> levels;
    std::vector<hierarchy::EmpId> unreachable;  // ascending
};

/// Depth-from-roots by fixed-point relaxation: sweep the records until no
/// level changes. Independent of the library's frontier expansion.
LevelsOracle relaxation_levels(const std::vector<hierarchy::HierarchyRecord>& records);

/// Reachable set from root_id following manager -> report edges, by
/// breadth-first search. Returns ids ascending.
std::vector<hierarchy::EmpId> bfs_subtree(
    const std::vector<hierarchy::HierarchyRecord>& records, hierarchy::EmpId root_id);

/// Maximize c.x subject to A x <= b, x >= 0 by enumerating every basic
/// solution (all n-subsets of the m + n hyperplanes), filtering feasible
/// ones. Exact for small LPs (intended for <= 6 variables, <= 8 rows).
/// Empty when no vertex is feasible.
std::optional<double> lp_vertex_optimum(const std::vector<double>& c,
                                        const std::vector<std::vector<double>>& A,
                                        const std::vector<double>& b);

/// Best total customer distance over a resolution x resolution lattice of
/// single-facility positions spanning the region.
double facility_grid_scan(const std::vector<geo::GeoPoint>& customers,
                          const spatial::BoundsRect& region, int resolution);

}  // namespace geobi::testing
