#pragma once

#include <cstddef>

#include "geobi/render.hpp"

namespace geobi::render::detail {

/// Rejects empty layers, misaligned labels, and mixed spatial references.
void check_layer(const RenderLayer& layer, std::size_t index);

}  // namespace geobi::render::detail
