#pragma once

#include <filesystem>

#include "geobi/objectives.hpp"

namespace geobi::io {

/// Reads a product-mix problem from a plain text file:
///
///     # comment
///     profit: 3 5
///     constraint: 1 0
///     constraint: 0 2
///     constraint: 3 2
///     rhs: 4 12 18
///     penalty_weight: 50000    # optional
///
/// Each `constraint:` line is one row of the left-hand-side matrix; rows
/// pair with the `rhs:` entries in order. Throws IoFailure when the file
/// cannot be read and InvalidConfig when the contents do not describe a
/// well-formed problem.
objectives::ProductMixInstance load_product_mix(const std::filesystem::path& path);

}  // namespace geobi::io
