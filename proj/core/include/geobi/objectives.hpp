#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "geobi/geo.hpp"
#include "geobi/grid_index.hpp"
#include "geobi/objective.hpp"

namespace geobi::objectives {

/// f(x) = sum x_d^2, minimum 0 at the origin. Default box [-5.12, 5.12]^n.
Objective sphere(std::size_t dimension);

/// f(x) = 10n + sum (x_d^2 - 10 cos(2 pi x_d)), minimum 0 at the origin.
/// Default box [-5.12, 5.12]^n.
Objective rastrigin(std::size_t dimension);

/// Place k facilities so the summed distance from every customer to its
/// nearest facility is minimal.
struct FacilityInstance {
    std::vector<geo::GeoPoint> customers;
    std::size_t k = 1;
    spatial::BoundsRect region{};  // placement rectangle, contains all customers
};

/// Objective of dimension 2k: the vector decodes as k (lon, lat) pairs.
/// Fitness is the total geodesic distance (meters) from each customer to its
/// nearest decoded facility; decoded points are clamped into the region.
Objective facility_objective(const FacilityInstance& inst);

/// Maximize profit c.x subject to A x <= b and x >= 0, recast for the
/// minimizing swarm via a quadratic exterior penalty.
struct ProductMixInstance {
    std::vector<double> profit;                       // c, one entry per product
    std::vector<std::vector<double>> constraints;     // A, one row per resource
    std::vector<double> rhs;                          // b, resource capacities
    std::optional<double> penalty_weight;             // mu; defaulted when absent
    std::optional<double> variable_cap;               // bound fallback for
                                                      // columns with no positive
                                                      // constraint coefficient
};

/// fitness(x) = -c.x + mu * sum_r max(0, (Ax - b)_r)^2
///                   + mu * sum_d max(0, -x_d)^2
/// Bounds are [0, ub_d] with ub_d the tightest single-constraint cap
/// b_r / A[r][d] over rows with A[r][d] > 0. Throws UnboundedVariable when a
/// column has no positive coefficient and no variable_cap is given.
Objective product_mix_objective(const ProductMixInstance& inst);

/// The default penalty weight used when ProductMixInstance.penalty_weight is
/// absent: 1e4 times the largest single-variable profit contribution.
double default_penalty_weight(const std::vector<double>& profit,
                              const std::vector<double>& upper_bounds);

}  // namespace geobi::objectives
