#include "geobi/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geobi/csv.hpp"
#include "geobi/errors.hpp"
#include "geobi/geo.hpp"
#include "geobi/geocode.hpp"
#include "geobi/grid_index.hpp"
#include "geobi/hierarchy.hpp"
#include "geobi/index_io.hpp"
#include "geobi/objectives.hpp"
#include "geobi/problem_io.hpp"
#include "geobi/pso.hpp"
#include "geobi/render.hpp"
#include "geobi/ring_io.hpp"

namespace geobi::cli {
namespace {

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string trimmed(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Flat `key = value` settings file; `#` starts a comment.
std::map<std::string, std::string> load_config(const std::string& path) {
    static const std::vector<std::string> kKnownKeys = {
        "seed",       "swarm_size",        "iterations",
        "inertia",    "cognitive",         "social",
        "stagnation_window", "stagnation_epsilon", "penalty_weight"};

    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config file " + path);
    std::map<std::string, std::string> config;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string text = trimmed(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(line_number) +
                                ": expected 'key = value'");
        }
        const std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw InvalidConfig(path + ":" + std::to_string(line_number) + ": unknown key '" +
                                key + "'");
        }
        if (value.empty()) {
            throw InvalidConfig(path + ":" + std::to_string(line_number) + ": '" + key +
                                "' has no value");
        }
        config[key] = value;
    }
    return config;
}

template <typename T>
T parse_config_number(const std::map<std::string, std::string>& config,
                      const std::string& key) {
    const std::string& text = config.at(key);
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidConfig("config key '" + key + "': bad value '" + text + "'");
    }
    return value;
}

/// Swarm settings shared by the optimize subcommands, with option handles so
/// config-file values only fill in what the command line left untouched.
struct SwarmFlags {
    std::uint64_t seed = 0;
    std::size_t swarm_size = 40;
    std::size_t iterations = 500;
    double inertia = 1.0;
    double cognitive = 2.0;
    double social = 2.0;
    std::size_t stagnation_window = 0;
    double stagnation_epsilon = 0.0;
    double penalty_weight = 0.0;
    std::string config_path;
    std::string history_path;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* swarm_opt = nullptr;
    CLI::Option* iter_opt = nullptr;
    CLI::Option* inertia_opt = nullptr;
    CLI::Option* cognitive_opt = nullptr;
    CLI::Option* social_opt = nullptr;
    CLI::Option* window_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
    CLI::Option* penalty_opt = nullptr;
};

void add_swarm_flags(CLI::App* cmd, SwarmFlags& f, bool with_penalty) {
    f.seed_opt = cmd->add_option("--seed", f.seed, "RNG seed (default 0)");
    f.swarm_opt = cmd->add_option("--swarm-size", f.swarm_size, "particles (default 40)");
    f.iter_opt = cmd->add_option("--iterations", f.iterations, "iterations (default 500)");
    f.inertia_opt = cmd->add_option("--inertia", f.inertia, "velocity carry-over c0");
    f.cognitive_opt = cmd->add_option("--cognitive", f.cognitive, "personal-best pull c1");
    f.social_opt = cmd->add_option("--social", f.social, "neighborhood pull c2");
    f.window_opt = cmd->add_option("--stagnation-window", f.stagnation_window,
                                   "stop after this many near-flat iterations (0 = off)");
    f.eps_opt = cmd->add_option("--stagnation-epsilon", f.stagnation_epsilon,
                                "improvement below this counts as flat");
    if (with_penalty) {
        f.penalty_opt = cmd->add_option("--penalty-weight", f.penalty_weight,
                                        "constraint violation weight");
    }
    cmd->add_option("--config", f.config_path, "key = value settings file");
    cmd->add_option("--history", f.history_path, "write iteration,gbest_fitness CSV here");
}

/// Command line beats the config file beats the built-in defaults.
void apply_config(SwarmFlags& f) {
    if (f.config_path.empty()) return;
    const auto config = load_config(f.config_path);
    auto fill = [&](const char* key, CLI::Option* opt, auto& slot) {
        using T = std::remove_reference_t<decltype(slot)>;
        if (opt != nullptr && opt->count() == 0 && config.count(key) != 0) {
            slot = parse_config_number<T>(config, key);
        }
    };
    fill("seed", f.seed_opt, f.seed);
    fill("swarm_size", f.swarm_opt, f.swarm_size);
    fill("iterations", f.iter_opt, f.iterations);
    fill("inertia", f.inertia_opt, f.inertia);
    fill("cognitive", f.cognitive_opt, f.cognitive);
    fill("social", f.social_opt, f.social);
    fill("stagnation_window", f.window_opt, f.stagnation_window);
    fill("stagnation_epsilon", f.eps_opt, f.stagnation_epsilon);
    fill("penalty_weight", f.penalty_opt, f.penalty_weight);
}

void write_history(const std::string& path, const std::vector<double>& history) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << "iteration,gbest_fitness\n";
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << i << ',' << fmt(history[i]) << '\n';
    }
    if (!out) throw IoFailure("failed writing " + path);
}

pso::RunResult run_swarm(const SwarmFlags& f, const Objective& objective) {
    pso::SwarmConfig config;
    config.dimension = objective.dimension;
    config.bounds = objective.bounds;
    config.swarm_size = f.swarm_size;
    config.max_iterations = f.iterations;
    config.inertia = f.inertia;
    config.cognitive = f.cognitive;
    config.social = f.social;
    config.stagnation_window = f.stagnation_window;
    config.stagnation_epsilon = f.stagnation_epsilon;
    config.seed = f.seed;
    auto result = pso::run(config, objective);
    if (!f.history_path.empty()) write_history(f.history_path, result.history);
    return result;
}

std::vector<geo::GeoPoint> resolve_customer_points(const io::CustomerLoad& load,
                                                   std::ostream& err) {
    for (const auto& reject : load.rejects) {
        err << "warning: customer row " << reject.row_number << " skipped: " << reject.reason
            << '\n';
    }
    std::vector<geo::GeoPoint> points;
    points.reserve(load.rows.size());
    for (const auto& row : load.rows) points.push_back(io::resolve_point(row));
    return points;
}

spatial::BoundsRect bounding_region(const std::vector<geo::GeoPoint>& points) {
    spatial::BoundsRect r{180.0, 90.0, -180.0, -90.0};
    for (const auto& p : points) {
        r.lon_min = std::min(r.lon_min, p.lon());
        r.lat_min = std::min(r.lat_min, p.lat());
        r.lon_max = std::max(r.lon_max, p.lon());
        r.lat_max = std::max(r.lat_max, p.lat());
    }
    if (r.lon_max - r.lon_min < 1e-9) {
        r.lon_min = std::max(-180.0, r.lon_min - 0.5);
        r.lon_max = std::min(180.0, r.lon_max + 0.5);
    }
    if (r.lat_max - r.lat_min < 1e-9) {
        r.lat_min = std::max(-90.0, r.lat_min - 0.5);
        r.lat_max = std::min(90.0, r.lat_max + 0.5);
    }
    return r;
}

spatial::Density parse_density(const std::string& token) {
    if (token == "low") return spatial::Density::Low;
    if (token == "medium") return spatial::Density::Medium;
    if (token == "high") return spatial::Density::High;
    throw CLI::ValidationError("--levels", "'" + token + "' is not low|medium|high");
}

std::vector<spatial::GridIndex::Entry> numeric_entries(const io::CustomerLoad& load) {
    std::vector<spatial::GridIndex::Entry> entries;
    entries.reserve(load.rows.size());
    for (const auto& row : load.rows) {
        spatial::EntryId id = 0;
        auto [ptr, ec] = std::from_chars(row.id.data(), row.id.data() + row.id.size(), id);
        if (ec != std::errc{} || ptr != row.id.data() + row.id.size()) {
            throw Error("customer id '" + row.id + "' is not numeric; the index needs integer ids");
        }
        entries.emplace_back(id, io::resolve_point(row));
    }
    return entries;
}

std::vector<render::RenderLayer> load_layers(const std::string& spec_path, std::ostream& err) {
    std::ifstream in(spec_path);
    if (!in) throw IoFailure("cannot open layer spec " + spec_path);
    std::vector<render::RenderLayer> layers;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        // Whole-line comments only: '#' also starts color tokens.
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tokens(line);
        std::string kind;
        if (!(tokens >> kind)) continue;
        std::string path;
        if (!(tokens >> path)) {
            throw InvalidConfig(spec_path + ":" + std::to_string(line_number) +
                                ": missing data file after '" + kind + "'");
        }
        render::RenderLayer layer;
        if (kind == "points") {
            layer.kind = render::LayerKind::Points;
            layer.style.color = "#1f77b4";
            std::string color;
            if (tokens >> color) layer.style.color = color;
            std::string size_text;
            if (tokens >> size_text) {
                double size = 0.0;
                auto [ptr, ec] = std::from_chars(size_text.data(),
                                                 size_text.data() + size_text.size(), size);
                if (ec != std::errc{} || ptr != size_text.data() + size_text.size() ||
                    size <= 0.0) {
                    throw InvalidConfig(spec_path + ":" + std::to_string(line_number) +
                                        ": bad marker size '" + size_text + "'");
                }
                layer.style.marker_size = size;
            }
            const auto load = io::load_customers(path);
            for (const auto& reject : load.rejects) {
                err << "warning: " << path << " row " << reject.row_number
                    << " skipped: " << reject.reason << '\n';
            }
            for (const auto& row : load.rows) {
                layer.points.push_back(io::resolve_point(row));
                layer.labels.push_back(row.name);
            }
        } else if (kind == "outline") {
            layer.kind = render::LayerKind::Outline;
            layer.style.color = "#555555";
            std::string color;
            if (tokens >> color) layer.style.color = color;
            layer.outlines.push_back(io::load_ring(path));
        } else {
            throw InvalidConfig(spec_path + ":" + std::to_string(line_number) +
                                ": unknown layer kind '" + kind + "'");
        }
        std::string extra;
        if (tokens >> extra) {
            throw InvalidConfig(spec_path + ":" + std::to_string(line_number) +
                                ": unexpected token '" + extra + "'");
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::string lower_extension(const std::string& path) {
    const auto ext = std::filesystem::path(path).extension().string();
    std::string out = ext;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"geospatial business-intelligence toolkit", "bi-cli"};
    app.require_subcommand(1);

    auto echo_seed = [&err](std::uint64_t seed) { err << "seed: " << seed << '\n'; };

    // query nearest | query within
    auto* query = app.add_subcommand("query", "run index queries");
    query->require_subcommand(1);

    struct {
        std::string index_path;
        std::string point_wkt;
        std::size_t k = 1;
        std::uint64_t seed = 0;
    } nearest_args;
    auto* nearest = query->add_subcommand("nearest", "k nearest entries to a point");
    nearest->add_option("--index", nearest_args.index_path, "index file from 'index build'")
        ->required();
    nearest->add_option("--point", nearest_args.point_wkt, "query point, POINT(lon lat)")
        ->required();
    nearest->add_option("-k,--count", nearest_args.k, "neighbors to return (default 1)");
    nearest->add_option("--seed", nearest_args.seed, "RNG seed (echoed; queries are exact)");
    nearest->callback([&] {
        if (nearest_args.k == 0) throw CLI::ValidationError("-k", "must be at least 1");
        echo_seed(nearest_args.seed);
        const auto index = io::load_index(nearest_args.index_path);
        const auto q = geo::parse_wkt_point(nearest_args.point_wkt);
        const auto hits = index.nearest(q, nearest_args.k);
        out << "id,distance_m\n";
        for (const auto& hit : hits) out << hit.id << ',' << fmt(hit.distance_m) << '\n';
    });

    struct {
        std::string index_path;
        std::string ring_path;
        std::uint64_t seed = 0;
    } within_args;
    auto* within = query->add_subcommand("within", "entries inside a polygon");
    within->add_option("--index", within_args.index_path, "index file from 'index build'")
        ->required();
    within->add_option("--polygon", within_args.ring_path, "ring file (lon lat per line or WKT)")
        ->required();
    within->add_option("--seed", within_args.seed, "RNG seed (echoed; queries are exact)");
    within->callback([&] {
        echo_seed(within_args.seed);
        const auto index = io::load_index(within_args.index_path);
        const auto region = io::load_ring(within_args.ring_path);
        const auto ids = index.range_query(region);
        out << "id\n";
        for (const auto id : ids) out << id << '\n';
    });

    // optimize facility | optimize product-mix
    auto* optimize = app.add_subcommand("optimize", "run the particle swarm");
    optimize->require_subcommand(1);

    struct {
        std::string customers_path;
        std::size_t k = 1;
        SwarmFlags swarm;
    } facility_args;
    auto* facility = optimize->add_subcommand("facility", "place k facilities near customers");
    facility->add_option("--customers", facility_args.customers_path, "customer CSV")
        ->required();
    facility->add_option("-k,--facilities", facility_args.k, "facility count (default 1)");
    add_swarm_flags(facility, facility_args.swarm, false);
    facility->callback([&] {
        if (facility_args.k == 0) throw CLI::ValidationError("-k", "must be at least 1");
        apply_config(facility_args.swarm);
        echo_seed(facility_args.swarm.seed);
        const auto load = io::load_customers(facility_args.customers_path);
        objectives::FacilityInstance instance;
        instance.customers = resolve_customer_points(load, err);
        instance.k = facility_args.k;
        instance.region = bounding_region(instance.customers);
        const auto objective = objectives::facility_objective(instance);
        const auto result = run_swarm(facility_args.swarm, objective);
        for (std::size_t f = 0; f < facility_args.k; ++f) {
            const geo::GeoPoint p(result.best_position[2 * f], result.best_position[2 * f + 1]);
            out << "facility " << (f + 1) << ": " << geo::emit_wkt(p) << '\n';
        }
        out << "cost_m: " << fmt(result.best_fitness) << '\n';
        out << "iterations: " << result.iterations_used << '\n';
    });

    struct {
        std::string problem_path;
        SwarmFlags swarm;
    } mix_args;
    auto* mix = optimize->add_subcommand("product-mix", "maximize profit under resource limits");
    mix->add_option("--problem", mix_args.problem_path, "problem file (profit/constraint/rhs)")
        ->required();
    add_swarm_flags(mix, mix_args.swarm, true);
    mix->callback([&] {
        apply_config(mix_args.swarm);
        echo_seed(mix_args.swarm.seed);
        auto instance = io::load_product_mix(mix_args.problem_path);
        if (mix_args.swarm.penalty_opt->count() > 0) {
            instance.penalty_weight = mix_args.swarm.penalty_weight;
        } else if (!instance.penalty_weight && mix_args.swarm.penalty_weight > 0.0) {
            instance.penalty_weight = mix_args.swarm.penalty_weight;
        }
        const auto objective = objectives::product_mix_objective(instance);
        const auto result = run_swarm(mix_args.swarm, objective);
        out << "x:";
        for (const double v : result.best_position) out << ' ' << fmt(v);
        out << '\n';
        double profit = 0.0;
        for (std::size_t d = 0; d < instance.profit.size(); ++d) {
            profit += instance.profit[d] * result.best_position[d];
        }
        out << "profit: " << fmt(profit) << '\n';
        bool feasible = true;
        for (std::size_t r = 0; r < instance.constraints.size(); ++r) {
            double lhs = 0.0;
            for (std::size_t d = 0; d < instance.profit.size(); ++d) {
                lhs += instance.constraints[r][d] * result.best_position[d];
            }
            if (lhs > instance.rhs[r]) feasible = false;
        }
        for (const double v : result.best_position) {
            if (v < 0.0) feasible = false;
        }
        out << "feasible: " << (feasible ? "yes" : "no") << '\n';
        out << "iterations: " << result.iterations_used << '\n';
    });

    // hierarchy levels
    auto* hier = app.add_subcommand("hierarchy", "organizational hierarchy reports");
    hier->require_subcommand(1);

    struct {
        std::string in_path;
        std::uint64_t seed = 0;
    } levels_args;
    auto* levels = hier->add_subcommand("levels", "per-employee depth below the roots");
    levels->add_option("--in", levels_args.in_path, "hierarchy CSV")->required();
    levels->add_option("--seed", levels_args.seed, "RNG seed (echoed; evaluation is exact)");
    levels->callback([&] {
        echo_seed(levels_args.seed);
        const auto records = io::load_hierarchy(levels_args.in_path);
        const auto result = hierarchy::evaluate_levels(records);
        out << "emp_id,level\n";
        for (const auto& row : result.rows) {
            out << row.record.emp_id << ',' << row.level << '\n';
        }
        if (!result.unreachable.empty()) {
            err << "unreachable:";
            for (const auto id : result.unreachable) err << ' ' << id;
            err << '\n';
        }
    });

    // render
    struct {
        std::string layers_path;
        std::string out_path;
        int width = 800;
        int height = 600;
        std::uint64_t seed = 0;
    } render_args;
    auto* render_cmd = app.add_subcommand("render", "draw layers to GeoJSON or SVG");
    render_cmd->add_option("--layers", render_args.layers_path,
                           "layer spec: 'points CSV [color] [size]' / 'outline RING [color]'")
        ->required();
    render_cmd->add_option("--out", render_args.out_path, "output file (.geojson or .svg)")
        ->required();
    render_cmd->add_option("--width", render_args.width, "SVG canvas width (default 800)");
    render_cmd->add_option("--height", render_args.height, "SVG canvas height (default 600)");
    render_cmd->add_option("--seed", render_args.seed, "RNG seed (echoed; rendering is exact)");
    render_cmd->callback([&] {
        if (render_args.width < 64 || render_args.height < 64) {
            throw CLI::ValidationError("--width/--height", "canvas must be at least 64x64");
        }
        echo_seed(render_args.seed);
        const auto layers = load_layers(render_args.layers_path, err);
        const auto ext = lower_extension(render_args.out_path);
        std::size_t features = 0;
        for (const auto& layer : layers) features += layer.feature_count();
        if (ext == ".geojson" || ext == ".json") {
            render::write_geojson(layers, render_args.out_path);
        } else if (ext == ".svg") {
            render::write_svg(layers, render_args.out_path, render_args.width,
                              render_args.height);
        } else {
            throw CLI::ValidationError("--out", "expected a .geojson, .json or .svg path");
        }
        out << "features: " << features << '\n';
        out << "wrote: " << render_args.out_path << '\n';
    });

    // index build
    auto* index_cmd = app.add_subcommand("index", "spatial index maintenance");
    index_cmd->require_subcommand(1);

    struct {
        std::string customers_path;
        std::vector<double> bounds;
        std::string levels_text = "high,high,high,high";
        std::string out_path;
        std::uint64_t seed = 0;
    } build_args;
    auto* build = index_cmd->add_subcommand("build", "build and save a grid index");
    build->add_option("--customers", build_args.customers_path, "customer CSV (numeric ids)")
        ->required();
    build->add_option("--bounds", build_args.bounds,
                      "grid rectangle: lon_min lat_min lon_max lat_max")
        ->expected(4)
        ->required();
    build->add_option("--levels", build_args.levels_text,
                      "four densities, e.g. high,high,medium,low");
    build->add_option("--out", build_args.out_path, "output index file")->required();
    build->add_option("--seed", build_args.seed, "RNG seed (echoed; builds are exact)");
    build->callback([&] {
        echo_seed(build_args.seed);
        spatial::GridConfig config;
        config.bounds = {build_args.bounds[0], build_args.bounds[1], build_args.bounds[2],
                         build_args.bounds[3]};
        std::istringstream tokens(build_args.levels_text);
        std::string token;
        std::size_t level = 0;
        while (std::getline(tokens, token, ',')) {
            if (level >= config.levels.size()) {
                throw CLI::ValidationError("--levels", "expected exactly four densities");
            }
            config.levels[level++] = parse_density(trimmed(token));
        }
        if (level != config.levels.size()) {
            throw CLI::ValidationError("--levels", "expected exactly four densities");
        }
        const auto load = io::load_customers(build_args.customers_path);
        for (const auto& reject : load.rejects) {
            err << "warning: customer row " << reject.row_number << " skipped: " << reject.reason
                << '\n';
        }
        const auto index = spatial::build_index(numeric_entries(load), config);
        io::save_index(index, build_args.out_path);
        out << "entries: " << index.size() << '\n';
        out << "wrote: " << build_args.out_path << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("bi-cli");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geobi::cli
