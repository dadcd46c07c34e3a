#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "geobi/cli.hpp"
#include "geobi/csv.hpp"
#include "geobi/geo.hpp"
#include "geobi/grid_index.hpp"
#include "geobi/index_io.hpp"
#include "temp_files.hpp"

using namespace geobi;
using testing::temp_file;
using testing::write_text;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// Value of the first output line starting with `prefix`.
std::string line_value(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    return {};
}

}  // namespace

TEST_CASE("no arguments is a usage error with a synopsis") {
    const auto r = run_cli({});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.err.find("optimize") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
    const auto r = run_cli({"hierarchy", "levels", "--bogus"});
    CHECK(r.code == 1);
}

TEST_CASE("hierarchy levels prints a level csv") {
    const auto r = run_cli({"hierarchy", "levels", "--in", "data/org_sample.csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "emp_id,level\n1,0\n2,1\n3,1\n4,2\n");
    CHECK(r.err.find("seed: 0") != std::string::npos);
}

TEST_CASE("hierarchy levels reports dangling rows on the error stream") {
    const auto path = write_text("cli_dangling.csv",
                                 "emp_id,first_name,last_name,manager_id\n"
                                 "1,A,A,\n"
                                 "2,B,B,42\n");
    const auto r = run_cli({"hierarchy", "levels", "--in", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "emp_id,level\n1,0\n");
    CHECK(r.err.find("unreachable: 2") != std::string::npos);
}

TEST_CASE("a manager cycle is a data error") {
    const auto path = write_text("cli_cycle.csv",
                                 "emp_id,first_name,last_name,manager_id\n"
                                 "1,A,A,2\n"
                                 "2,B,B,1\n");
    const auto r = run_cli({"hierarchy", "levels", "--in", path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("facility optimization finds the center of the corner square") {
    const auto r = run_cli({"optimize", "facility", "--customers", "data/corners4.csv",
                            "-k", "1", "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("seed: 3") != std::string::npos);
    const auto wkt = line_value(r.out, "facility 1: ");
    REQUIRE_FALSE(wkt.empty());
    const auto p = geo::parse_wkt_point(wkt);
    CHECK(std::fabs(p.lon()) < 1e-3);
    CHECK(std::fabs(p.lat()) < 1e-3);
    CHECK_FALSE(line_value(r.out, "cost_m: ").empty());
    CHECK_FALSE(line_value(r.out, "iterations: ").empty());
}

TEST_CASE("facility runs are byte deterministic") {
    const std::vector<std::string> args{"optimize", "facility", "--customers",
                                        "data/corners4.csv", "--seed", "11",
                                        "--iterations", "60"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
}

TEST_CASE("zero facilities is a usage error") {
    const auto r = run_cli({"optimize", "facility", "--customers", "data/corners4.csv",
                            "-k", "0"});
    CHECK(r.code == 1);
}

TEST_CASE("product mix solves the textbook problem") {
    const auto r = run_cli({"optimize", "product-mix", "--problem",
                            "data/product_mix_textbook.txt", "--seed", "1"});
    REQUIRE(r.code == 0);
    const double profit = std::stod(line_value(r.out, "profit: "));
    CHECK(profit >= 35.64);
    CHECK(line_value(r.out, "feasible: ") == "yes");
}

TEST_CASE("config files fill in unset swarm flags") {
    const auto config = write_text("cli_swarm.cfg",
                                   "# swarm settings\n"
                                   "seed = 9\n"
                                   "iterations = 40\n");
    const std::vector<std::string> base{"optimize", "product-mix", "--problem",
                                        "data/product_mix_textbook.txt", "--config",
                                        config.string()};
    const auto from_config = run_cli(base);
    CHECK(from_config.code == 0);
    CHECK(from_config.err.find("seed: 9") != std::string::npos);

    auto with_flag = base;
    with_flag.insert(with_flag.end(), {"--seed", "4"});
    const auto overridden = run_cli(with_flag);
    CHECK(overridden.code == 0);
    CHECK(overridden.err.find("seed: 4") != std::string::npos);

    const auto bad = run_cli({"optimize", "product-mix", "--problem",
                              "data/product_mix_textbook.txt", "--config",
                              write_text("cli_bad.cfg", "mystery = 1\n").string()});
    CHECK(bad.code == 2);
}

TEST_CASE("swarm history lands in the requested csv") {
    const auto history = temp_file("cli_history.csv");
    const auto r = run_cli({"optimize", "product-mix", "--problem",
                            "data/product_mix_textbook.txt", "--iterations", "25",
                            "--history", history.string()});
    REQUIRE(r.code == 0);
    const auto text = testing::read_text(history);
    CHECK(text.rfind("iteration,gbest_fitness\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 27);  // header + init + 25 steps
}

TEST_CASE("index build, nearest and within round trip through a file") {
    std::string csv = "id,name,lon,lat\n";
    for (int i = 0; i < 60; ++i) {
        const double lon = -20.0 + i * 0.61;
        const double lat = -15.0 + (i * 7 % 30);
        csv += std::to_string(i + 1) + ",C" + std::to_string(i + 1) + "," +
               std::to_string(lon) + "," + std::to_string(lat) + "\n";
    }
    const auto customers = write_text("cli_index_customers.csv", csv);
    const auto index_path = temp_file("cli_index.gbix");

    const auto built = run_cli({"index", "build", "--customers", customers.string(),
                                "--bounds", "-30", "-20", "30", "20",
                                "--levels", "high,high,medium,low",
                                "--out", index_path.string()});
    REQUIRE(built.code == 0);
    CHECK(line_value(built.out, "entries: ") == "60");

    const auto loaded = io::load_index(index_path);
    REQUIRE(loaded.size() == 60);

    const auto nearest = run_cli({"query", "nearest", "--index", index_path.string(),
                                  "--point", "POINT(0 0)", "-k", "5"});
    REQUIRE(nearest.code == 0);
    std::istringstream lines(nearest.out);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "id,distance_m");
    const auto want = loaded.nearest(geo::GeoPoint(0, 0), 5);
    for (const auto& hit : want) {
        REQUIRE(std::getline(lines, line));
        const auto comma = line.find(',');
        REQUIRE(std::stoull(line.substr(0, comma)) == hit.id);
        REQUIRE(std::stod(line.substr(comma + 1)) == hit.distance_m);
    }

    const auto ring = write_text("cli_region.txt", "-5 -20\n15 -20\n15 20\n-5 20\n");
    const auto within = run_cli({"query", "within", "--index", index_path.string(),
                                 "--polygon", ring.string()});
    REQUIRE(within.code == 0);
    const auto expect = loaded.range_query(
        geo::GeoPolygon({{-5, -20}, {15, -20}, {15, 20}, {-5, 20}}));
    std::string expected_out = "id\n";
    for (const auto id : expect) expected_out += std::to_string(id) + "\n";
    CHECK(within.out == expected_out);

    const auto missing = run_cli({"query", "nearest", "--index",
                                  temp_file("cli_missing.gbix").string(), "--point",
                                  "POINT(0 0)"});
    CHECK(missing.code == 2);

    const auto zero_k = run_cli({"query", "nearest", "--index", index_path.string(),
                                 "--point", "POINT(0 0)", "-k", "0"});
    CHECK(zero_k.code == 1);
}

TEST_CASE("render writes geojson and svg from a layer spec") {
    const auto points = write_text("cli_render_points.csv",
                                   "id,name,lon,lat\n"
                                   "1,A,0,0\n"
                                   "2,B,10,10\n"
                                   "3,C,5,2\n");
    const auto ring = write_text("cli_render_ring.txt", "-1 -1\n11 -1\n11 11\n-1 11\n");
    const auto spec = write_text("cli_render_layers.spec",
                                 "# map layers\n"
                                 "outline " + ring.string() + " #888888\n"
                                 "points " + points.string() + " #d62728 4\n");

    const auto geojson_path = temp_file("cli_render.geojson");
    const auto rendered = run_cli({"render", "--layers", spec.string(), "--out",
                                   geojson_path.string()});
    REQUIRE(rendered.code == 0);
    CHECK(line_value(rendered.out, "features: ") == "4");
    const auto doc = nlohmann::json::parse(testing::read_text(geojson_path));
    CHECK(doc["features"].size() == 4);

    const auto svg_path = temp_file("cli_render.svg");
    const auto svg_run = run_cli({"render", "--layers", spec.string(), "--out",
                                  svg_path.string(), "--width", "640", "--height", "480"});
    REQUIRE(svg_run.code == 0);
    const auto svg = testing::read_text(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("stroke=\"#888888\"") != std::string::npos);

    const auto bad_ext = run_cli({"render", "--layers", spec.string(), "--out",
                                  temp_file("cli_render.png").string()});
    CHECK(bad_ext.code == 1);

    const auto tiny = run_cli({"render", "--layers", spec.string(), "--out",
                               svg_path.string(), "--width", "10"});
    CHECK(tiny.code == 1);
}

TEST_CASE("missing input files are data errors") {
    const auto r = run_cli({"optimize", "facility", "--customers",
                            temp_file("cli_nonexistent.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}
