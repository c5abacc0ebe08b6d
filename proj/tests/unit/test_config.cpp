#include <doctest.h>

#include "curlwave/commands.hpp"
#include "curlwave/config.hpp"
#include "curlwave/errors.hpp"

#include <cstdlib>

using namespace curlwave;

TEST_CASE("empty config yields documented defaults") {
    const auto cfg = parse_config_text("{}");
    CHECK(cfg.kind == "rogue_wave");
    CHECK(cfg.p == 3.0);
    CHECK(cfg.equation == Variant::Rogue);
    CHECK(cfg.geometry.family == "torus");
    CHECK(cfg.coefficients.V == "exp(zeta)");
    CHECK_FALSE(cfg.coefficients.delta.has_value());
    CHECK(cfg.tolerances.residual == 1e-6);
    CHECK(cfg.tolerances.parallelism == 1e-10);
    CHECK(cfg.grid.resolution == 9);
    CHECK(cfg.T_list == std::vector<double>{10, 20, 40});
    CHECK(cfg.seed == 1);
}

TEST_CASE("validation errors name the key") {
    try {
        parse_config_text(R"({"p": 0.5})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.key == "p");
        CHECK(std::string(e.what()).find("p must exceed 1") != std::string::npos);
    }
    try {
        parse_config_text(R"({"coefficients": {"sigma∞": 1}})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.key == "coefficients.sigma∞");
    }
    CHECK_THROWS_AS(parse_config_text(R"({"kind": "soliton"})"), ValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"grid": {"resolution": 1}})"), ValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"geometry": {"family": "custom", "g": "x1^2"}})"), ValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"coefficients": {"q": "x1"}})"), ValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"seed": -3})"), ValidationError);
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_config_text("{\n  \"p\": 3,\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("full config round into field construction") {
    const auto cfg = parse_config_text(R"json({
        "kind": "breather_plus", "p": 2,
        "geometry": {"family": "cone_abs_axial", "gamma": 2, "r0": 0.5},
        "coefficients": {"s": "1", "q": "(1 - 0.3*exp(-zeta^2))^2", "V": "1", "sigma_inf": 1},
        "phase_shift": "sin(zeta)",
        "grid": {"extent": 2, "resolution": 3, "t_range": [0, 1], "t_samples": 2},
        "checks": {"shells": [1, 2, 3, 4], "holder": {"T": 3}},
        "seed": 42})json");
    CHECK(cfg.checks.holder->pairs == 50);
    CHECK(cfg.checks.shells.size() == 4);
    const auto field = build_field(cfg);
    CHECK(field.kind() == FieldKind::BreatherPlus);
    CHECK(field.shifted());
    CHECK(field.geometry().family() == Family::ConeAbsAxial);
    CHECK(field.period() == doctest::Approx(2 * std::acos(-1.0)));
}

TEST_CASE("missing omega for a dark breather") {
    const auto cfg = parse_config_text(R"({"kind": "dark_breather",
        "coefficients": {"sigma_inf": 1, "tau_inf": 1, "V": "1"}})");
    CHECK_THROWS_AS(build_field(cfg), ValidationError);
}

TEST_CASE("thread resolution: flag, then environment") {
    unsetenv("CURLWAVE_THREADS");
    CHECK(resolve_threads(0) == 0);
    CHECK(resolve_threads(3) == 3);
    setenv("CURLWAVE_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    CHECK(resolve_threads(2) == 2);
    setenv("CURLWAVE_THREADS", "five", 1);
    CHECK_THROWS_AS(resolve_threads(0), ValidationError);
    unsetenv("CURLWAVE_THREADS");
}
