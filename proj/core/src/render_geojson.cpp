#include <fstream>

#include <json.hpp>

#include "geobi/errors.hpp"
#include "geobi/render.hpp"
#include "render_common.hpp"

namespace geobi::render {

namespace detail {

void check_layer(const RenderLayer& layer, std::size_t index) {
    if (layer.feature_count() == 0) {
        throw InvalidConfig("render: layer " + std::to_string(index) + " has no features");
    }
    if (layer.kind == LayerKind::Points && !layer.labels.empty() &&
        layer.labels.size() != layer.points.size()) {
        throw InvalidConfig("render: layer " + std::to_string(index) +
                            " labels do not line up with points");
    }
    for (const auto& p : layer.points) {
        if (p.srid() != geo::kSridWgs84) {
            throw SridMismatch("render: layer " + std::to_string(index) +
                               " mixes spatial reference systems");
        }
    }
}

}  // namespace detail

namespace {

using nlohmann::json;

json point_geometry(const geo::GeoPoint& p) {
    json g;
    g["type"] = "Point";
    g["coordinates"] = json::array({p.lon(), p.lat()});
    return g;
}

json polygon_geometry(const geo::GeoPolygon& poly) {
    json ring = json::array();
    for (const auto& v : poly.ring()) {
        ring.push_back(json::array({v.lon(), v.lat()}));
    }
    const auto& first = poly.ring().front();
    ring.push_back(json::array({first.lon(), first.lat()}));
    json g;
    g["type"] = "Polygon";
    g["coordinates"] = json::array({std::move(ring)});
    return g;
}

}  // namespace

std::string render_geojson(std::span<const RenderLayer> layers) {
    json features = json::array();
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const auto& layer = layers[li];
        detail::check_layer(layer, li);
        if (layer.kind == LayerKind::Points) {
            for (std::size_t i = 0; i < layer.points.size(); ++i) {
                json props;
                props["color"] = layer.style.color;
                props["layer"] = li;
                props["marker_size"] = layer.style.marker_size;
                if (!layer.labels.empty() && !layer.labels[i].empty()) {
                    props["name"] = layer.labels[i];
                }
                json f;
                f["type"] = "Feature";
                f["geometry"] = point_geometry(layer.points[i]);
                f["properties"] = std::move(props);
                features.push_back(std::move(f));
            }
        } else {
            for (const auto& poly : layer.outlines) {
                json props;
                props["color"] = layer.style.color;
                props["layer"] = li;
                json f;
                f["type"] = "Feature";
                f["geometry"] = polygon_geometry(poly);
                f["properties"] = std::move(props);
                features.push_back(std::move(f));
            }
        }
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

void write_geojson(std::span<const RenderLayer> layers, const std::filesystem::path& out) {
    const std::string text = render_geojson(layers);
    std::ofstream file(out, std::ios::binary);
    if (!file) throw IoFailure("cannot open " + out.string() + " for writing");
    file << text;
    if (!file) throw IoFailure("failed writing " + out.string());
}

}  // namespace geobi::render
