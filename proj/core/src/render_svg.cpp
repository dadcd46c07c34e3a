#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "geobi/errors.hpp"
#include "geobi/render.hpp"
#include "render_common.hpp"

namespace geobi::render {
namespace {

struct Bounds {
    double lon_min = std::numeric_limits<double>::infinity();
    double lat_min = std::numeric_limits<double>::infinity();
    double lon_max = -std::numeric_limits<double>::infinity();
    double lat_max = -std::numeric_limits<double>::infinity();

    void add(const geo::GeoPoint& p) {
        lon_min = std::min(lon_min, p.lon());
        lat_min = std::min(lat_min, p.lat());
        lon_max = std::max(lon_max, p.lon());
        lat_max = std::max(lat_max, p.lat());
    }
};

/// Equirectangular mapping from degrees to pixels: lon scales linearly to x,
/// lat linearly to y (inverted, north up). Each axis is fitted to the canvas
/// inset by the margin; a degenerate axis collapses to the canvas midline.
struct Projection {
    double lon_min, lat_min;
    double scale_x, scale_y;  // pixels per degree; 0 marks a degenerate axis
    double left, bottom;      // drawable-area edges
    double center_x, center_y;

    [[nodiscard]] double x(const geo::GeoPoint& p) const {
        return scale_x > 0.0 ? left + (p.lon() - lon_min) * scale_x : center_x;
    }
    [[nodiscard]] double y(const geo::GeoPoint& p) const {
        return scale_y > 0.0 ? bottom - (p.lat() - lat_min) * scale_y : center_y;
    }
};

Projection fit(const Bounds& b, int width, int height) {
    const double margin_x = 0.05 * width;
    const double margin_y = 0.05 * height;
    const double span_lon = b.lon_max - b.lon_min;
    const double span_lat = b.lat_max - b.lat_min;

    Projection proj{};
    proj.lon_min = b.lon_min;
    proj.lat_min = b.lat_min;
    proj.scale_x = span_lon > 0.0 ? (width - 2.0 * margin_x) / span_lon : 0.0;
    proj.scale_y = span_lat > 0.0 ? (height - 2.0 * margin_y) / span_lat : 0.0;
    proj.left = margin_x;
    proj.bottom = height - margin_y;
    proj.center_x = 0.5 * width;
    proj.center_y = 0.5 * height;
    return proj;
}

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string escape_attr(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_svg(std::span<const RenderLayer> layers, int width, int height) {
    if (width < 64 || height < 64) {
        throw InvalidConfig("render_svg: canvas must be at least 64x64");
    }

    Bounds bounds;
    std::size_t total = 0;
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const auto& layer = layers[li];
        detail::check_layer(layer, li);
        total += layer.feature_count();
        for (const auto& p : layer.points) bounds.add(p);
        for (const auto& poly : layer.outlines) {
            for (const auto& v : poly.ring()) bounds.add(v);
        }
    }
    if (total == 0) throw EmptyScene("render_svg: nothing to draw");
    const Projection proj = fit(bounds, width, height);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";

    for (const auto& layer : layers) {
        if (layer.kind != LayerKind::Outline) continue;
        for (const auto& poly : layer.outlines) {
            svg << "  <polygon points=\"";
            bool first = true;
            for (const auto& v : poly.ring()) {
                if (!first) svg << ' ';
                svg << fmt(proj.x(v)) << ',' << fmt(proj.y(v));
                first = false;
            }
            svg << "\" fill=\"none\" stroke=\"" << escape_attr(layer.style.color)
                << "\" stroke-width=\"1\"/>\n";
        }
    }
    for (const auto& layer : layers) {
        if (layer.kind != LayerKind::Points) continue;
        for (const auto& p : layer.points) {
            svg << "  <circle cx=\"" << fmt(proj.x(p)) << "\" cy=\"" << fmt(proj.y(p))
                << "\" r=\"" << fmt(layer.style.marker_size) << "\" fill=\""
                << escape_attr(layer.style.color) << "\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(std::span<const RenderLayer> layers, const std::filesystem::path& out,
               int width, int height) {
    const std::string text = render_svg(layers, width, height);
    std::ofstream file(out, std::ios::binary);
    if (!file) throw IoFailure("cannot open " + out.string() + " for writing");
    file << text;
    if (!file) throw IoFailure("failed writing " + out.string());
}

}  // namespace geobi::render
