#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "geobi/geo.hpp"

namespace geobi::render {

enum class LayerKind { Points, Outline };

struct LayerStyle {
    std::string color = "#1f77b4";
    double marker_size = 3.0;
};

/// One drawable layer. Points layers carry points (plus optional labels,
/// aligned by index); outline layers carry polygons. A layer must hold at
/// least one feature and every feature must be WGS 84.
struct RenderLayer {
    LayerKind kind = LayerKind::Points;
    std::vector<geo::GeoPoint> points;
    std::vector<std::string> labels;
    std::vector<geo::GeoPolygon> outlines;
    LayerStyle style;

    [[nodiscard]] std::size_t feature_count() const {
        return kind == LayerKind::Points ? points.size() : outlines.size();
    }
};

/// GeoJSON FeatureCollection over all layers, one feature per point or
/// polygon. Output is byte-deterministic: object keys are alphabetical and
/// numbers use shortest round-trip form. Zero layers give an empty
/// collection.
std::string render_geojson(std::span<const RenderLayer> layers);

/// SVG 1.1 document, equirectangular projection of the combined bounding
/// box with a 5% canvas margin. Outline layers are drawn before (beneath)
/// point layers. Canvas must be at least 64x64 (InvalidConfig); an empty
/// scene throws EmptyScene.
std::string render_svg(std::span<const RenderLayer> layers, int width, int height);

void write_geojson(std::span<const RenderLayer> layers, const std::filesystem::path& out);
void write_svg(std::span<const RenderLayer> layers, const std::filesystem::path& out,
               int width, int height);

}  // namespace geobi::render
