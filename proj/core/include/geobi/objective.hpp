#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace geobi {

/// Inclusive per-dimension search interval.
struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// A minimization target: a pure, deterministic fitness function together
/// with its dimension and a default search box. Maximization problems are
/// expressed by negating the quantity of interest.
struct Objective {
    std::size_t dimension = 0;
    std::vector<Interval> bounds;
    std::function<double(std::span<const double>)> evaluate;
    std::string label;
};

}  // namespace geobi
