#include <doctest.h>

#include "curlwave/errors.hpp"
#include "curlwave/export.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace curlwave;

namespace {
std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("curlwave_test_" + name)).string();
}

Grid grid2() {
    Grid g;
    g.extent = 1;
    g.resolution = 2;
    g.t_min = 0;
    g.t_max = 1;
    g.t_samples = 2;
    return g;
}
}  // namespace

TEST_CASE("2x2x2x2 grid gives 16 rows and the header") {
    const auto f = synth_explicit_rogue(3, GeometryProfile::torus(0), CoefficientProfiles::constant(1, 1, 1));
    const auto g = grid2();
    std::ostringstream out;
    write_field_csv(out, sample_field(f, g.points(), g.times(), ExecMode::Serial), false);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,x2,x3,t,U1,U2,U3,singular");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 16);
}

TEST_CASE("complex header") {
    const auto f = synth_monochromatic(Variant::Rogue, 3, GeometryProfile::torus(0),
                                       CoefficientProfiles::constant(1, 1, 1), 1.0);
    const auto g = grid2();
    std::ostringstream out;
    write_field_csv(out, sample_field(f, g.points(), g.times(), ExecMode::Serial), true);
    CHECK(out.str().rfind("x1,x2,x3,t,U1,U2,U3,U1_im,U2_im,U3_im,singular\n", 0) == 0);
}

TEST_CASE("singular points are flagged with NaN values") {
    const auto f = synth_explicit_rogue(3, GeometryProfile::torus(0), CoefficientProfiles::constant(1, 1, 1));
    Grid g = grid2();
    g.resolution = 3;
    const auto path = temp_path("singular.csv");
    export_field(f, g, path);
    const auto table = read_field_csv(path);
    int flagged = 0;
    for (const auto& r : table.rows)
        if (r.singular) {
            ++flagged;
            CHECK(std::isnan(r.re[0]));
            CHECK(norm(r.x) == 0.0);
        }
    CHECK(flagged == 2);  // origin at both times
    std::filesystem::remove(path);
}

TEST_CASE("property: CSV round trip reproduces the evaluator") {
    auto c = CoefficientProfiles::constant(1, 1, 1);
    c.sigma_inf = 1.0;
    const auto geo = GeometryProfile::torus(0);
    const auto f = synth_monochromatic(Variant::Rogue, 2.5, geo, c, 0.7);
    Grid g;
    g.extent = 1.7;
    g.resolution = 4;
    g.t_min = -0.3;
    g.t_max = 1.9;
    g.t_samples = 3;
    const auto path = temp_path("roundtrip.csv");
    export_field(f, g, path);
    const auto table = read_field_csv(path);
    CHECK(table.complex_values);
    REQUIRE(table.rows.size() == g.size());
    double worst = 0;
    for (const auto& r : table.rows) {
        const auto v = f(r.x, r.t);
        for (int k = 0; k < 3; ++k)
            worst = std::max({worst, std::abs(v.re[k] - r.re[k]), std::abs(v.im[k] - r.im[k])});
    }
    CHECK(worst <= 1e-12);
    std::filesystem::remove(path);
}

TEST_CASE("diagnostics JSON") {
    Diagnostics d;
    d.residual_max = 1.5e-9;
    d.pass["residual"] = true;
    d.metadata["seed"] = "7";
    d.holder_ratios = {0.1, 0.2};
    const auto j = nlohmann::json::parse(diagnostics_json(d));
    CHECK(j["residual_max"].get<double>() == 1.5e-9);
    CHECK(j["pass"]["residual"].get<bool>());
    CHECK(j["metadata"]["seed"] == "7");
    CHECK(j["holder_ratios"].size() == 2);
    CHECK(j["curl_defect"].is_null());
}

TEST_CASE("unwritable paths raise IoError") {
    CHECK_THROWS_AS(write_text("/nonexistent/dir/out.txt", "x"), IoError);
    CHECK_THROWS_AS(read_field_csv("/nonexistent/field.csv"), IoError);
}
