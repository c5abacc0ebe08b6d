#include <doctest.h>

#include "curlwave/errors.hpp"
#include "curlwave/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

using namespace curlwave;

namespace {
const std::vector<Var> Z{Var::Zeta};
}

TEST_CASE("grid layout") {
    Grid g;
    g.extent = 1;
    g.resolution = 2;
    g.t_min = 0;
    g.t_max = 1;
    g.t_samples = 2;
    CHECK(g.points().size() == 8);
    CHECK(g.times() == std::vector<double>{0, 1});
    CHECK(g.size() == 16);
    g.resolution = 1;
    CHECK_THROWS(g.validate());
}

TEST_CASE("for_each_index visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(hits.size(), ExecMode::Parallel, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(for_each_index(100, ExecMode::Parallel,
                                   [](std::size_t i) {
                                       if (i == 37) throw std::runtime_error("boom");
                                   }),
                    std::runtime_error);
}

TEST_CASE("property: serial and parallel kernels give identical results") {
    auto c = CoefficientProfiles::from_expressions(Expression::parse("1", Z),
                                                   Expression::parse("(1 - 0.5*exp(-zeta^2))^2", Z),
                                                   Expression::parse("1", Z));
    c.sigma_inf = 1.0;
    const auto geo = GeometryProfile::torus(0);
    Grid g;
    g.extent = 2;
    g.resolution = 5;
    g.t_min = 0;
    g.t_max = 2;
    g.t_samples = 3;
    const auto pts = g.points();
    const auto ts = g.times();
    set_threads(4);
    const auto serial = residual_kernel(synth_breather(1, 3, geo, c), pts, ts, 1e-3, ExecMode::Serial);
    const auto parallel = residual_kernel(synth_breather(1, 3, geo, c), pts, ts, 1e-3, ExecMode::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (std::isnan(serial[i])) {
            CHECK(std::isnan(parallel[i]));
        } else {
            CHECK(serial[i] == parallel[i]);
        }
    }
    const auto f = synth_breather(1, 3, geo, c);
    const auto a = sample_field(f, pts, ts, ExecMode::Serial);
    const auto b = sample_field(f, pts, ts, ExecMode::Parallel);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        for (int k = 0; k < 3; ++k)
            if (!std::isnan(a.values[i].re[k])) CHECK(a.values[i].re[k] == b.values[i].re[k]);
    CHECK(a.singular == b.singular);
    set_threads(0);
}

TEST_CASE("singular points are flagged and skipped") {
    const auto f = synth_explicit_rogue(3, GeometryProfile::torus(0), CoefficientProfiles::constant(1, 1, 1));
    Grid g;
    g.extent = 1;
    g.resolution = 3;  // contains the origin
    g.t_min = 0;
    g.t_max = 0;
    g.t_samples = 1;
    const auto s = sample_field(f, g.points(), g.times(), ExecMode::Parallel);
    int flagged = 0;
    for (auto v : s.singular) flagged += v;
    CHECK(flagged == 1);
    const auto red = reduce(residual_kernel(f, g.points(), g.times(), 1e-3, ExecMode::Parallel));
    CHECK(red.skipped == 1);
    CHECK(red.count == 26);
}

TEST_CASE("reduce") {
    const auto r = reduce({3.0, std::nan(""), 4.0});
    CHECK(r.max == 4.0);
    CHECK(r.count == 2);
    CHECK(r.skipped == 1);
    CHECK(r.rms == doctest::Approx(std::sqrt(12.5)));
}
