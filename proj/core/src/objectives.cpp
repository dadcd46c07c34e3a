#include "geobi/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geobi/errors.hpp"

namespace geobi::objectives {

Objective sphere(std::size_t dimension) {
    if (dimension == 0) throw InvalidConfig("sphere needs dimension >= 1");
    Objective obj;
    obj.dimension = dimension;
    obj.bounds.assign(dimension, Interval{-5.12, 5.12});
    obj.label = "sphere";
    obj.evaluate = [](std::span<const double> x) {
        double sum = 0.0;
        for (double v : x) sum += v * v;
        return sum;
    };
    return obj;
}

Objective rastrigin(std::size_t dimension) {
    if (dimension == 0) throw InvalidConfig("rastrigin needs dimension >= 1");
    Objective obj;
    obj.dimension = dimension;
    obj.bounds.assign(dimension, Interval{-5.12, 5.12});
    obj.label = "rastrigin";
    obj.evaluate = [dimension](std::span<const double> x) {
        double sum = 10.0 * static_cast<double>(dimension);
        for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
        return sum;
    };
    return obj;
}

Objective facility_objective(const FacilityInstance& inst) {
    if (inst.customers.empty()) throw InvalidConfig("facility instance needs customers");
    if (inst.k == 0) throw InvalidConfig("facility instance needs k >= 1");
    if (!(inst.region.lon_min < inst.region.lon_max) ||
        !(inst.region.lat_min < inst.region.lat_max))
        throw InvalidConfig("facility region must be non-degenerate");
    for (const geo::GeoPoint& c : inst.customers) {
        if (!inst.region.contains(c))
            throw InvalidConfig("customer " + geo::emit_wkt(c) + " outside the placement region");
    }

    Objective obj;
    obj.dimension = 2 * inst.k;
    obj.bounds.reserve(obj.dimension);
    for (std::size_t j = 0; j < inst.k; ++j) {
        obj.bounds.push_back(Interval{inst.region.lon_min, inst.region.lon_max});
        obj.bounds.push_back(Interval{inst.region.lat_min, inst.region.lat_max});
    }
    obj.label = "facility-" + std::to_string(inst.k);

    const FacilityInstance instance = inst;  // owned copy for the closure
    obj.evaluate = [instance](std::span<const double> x) {
        std::vector<geo::GeoPoint> facilities;
        facilities.reserve(instance.k);
        for (std::size_t j = 0; j < instance.k; ++j) {
            const double lon =
                std::clamp(x[2 * j], instance.region.lon_min, instance.region.lon_max);
            const double lat =
                std::clamp(x[2 * j + 1], instance.region.lat_min, instance.region.lat_max);
            facilities.emplace_back(lon, lat);
        }
        double total = 0.0;
        for (const geo::GeoPoint& customer : instance.customers) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const geo::GeoPoint& f : facilities)
                nearest = std::min(nearest, geo::geodesic_distance(customer, f));
            total += nearest;
        }
        return total;
    };
    return obj;
}

double default_penalty_weight(const std::vector<double>& profit,
                              const std::vector<double>& upper_bounds) {
    double scale = 0.0;
    for (std::size_t d = 0; d < profit.size(); ++d)
        scale = std::max(scale, std::abs(profit[d]) * upper_bounds[d]);
    return scale > 0.0 ? 1e4 * scale : 1e4;
}

Objective product_mix_objective(const ProductMixInstance& inst) {
    const std::size_t n = inst.profit.size();
    const std::size_t m = inst.constraints.size();
    if (n == 0) throw InvalidConfig("product mix needs at least one product");
    if (m != inst.rhs.size())
        throw InvalidConfig("constraint matrix rows must match rhs length");
    for (const std::vector<double>& row : inst.constraints) {
        if (row.size() != n)
            throw InvalidConfig("every constraint row must have one coefficient per product");
    }
    for (double b : inst.rhs) {
        if (b < 0.0) throw InvalidConfig("rhs entries must be non-negative");
    }
    if (inst.penalty_weight && !(*inst.penalty_weight > 0.0))
        throw InvalidConfig("penalty weight must be positive");

    std::vector<double> ub(n);
    for (std::size_t d = 0; d < n; ++d) {
        double cap = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            if (inst.constraints[r][d] > 0.0)
                cap = std::min(cap, inst.rhs[r] / inst.constraints[r][d]);
        }
        if (!std::isfinite(cap)) {
            if (!inst.variable_cap)
                throw UnboundedVariable("variable " + std::to_string(d) +
                                        " has no positive constraint coefficient and no cap");
            cap = *inst.variable_cap;
        }
        if (!(cap > 0.0))
            throw InvalidConfig("variable " + std::to_string(d) + " has a non-positive cap");
        ub[d] = cap;
    }

    const double mu =
        inst.penalty_weight ? *inst.penalty_weight : default_penalty_weight(inst.profit, ub);

    Objective obj;
    obj.dimension = n;
    obj.bounds.reserve(n);
    for (std::size_t d = 0; d < n; ++d) obj.bounds.push_back(Interval{0.0, ub[d]});
    obj.label = "product-mix";

    const ProductMixInstance instance = inst;
    obj.evaluate = [instance, mu](std::span<const double> x) {
        double profit = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) profit += instance.profit[d] * x[d];

        double penalty = 0.0;
        for (std::size_t r = 0; r < instance.constraints.size(); ++r) {
            double lhs = 0.0;
            for (std::size_t d = 0; d < x.size(); ++d) lhs += instance.constraints[r][d] * x[d];
            const double violation = std::max(0.0, lhs - instance.rhs[r]);
            penalty += violation * violation;
        }
        for (double v : x) {
            const double violation = std::max(0.0, -v);
            penalty += violation * violation;
        }
        return -profit + mu * penalty;
    };
    return obj;
}

}  // namespace geobi::objectives
