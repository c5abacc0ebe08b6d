#include <doctest.h>

#include "curlwave/errors.hpp"
#include "curlwave/period_maps.hpp"
#include "curlwave/potential.hpp"

#include <cmath>
#include <random>

using namespace curlwave;

namespace {
const double pi = std::acos(-1.0);

PhasePoint start_point(const OdeCase& ode, double c) {
    if (ode.variant == Variant::Rogue) return {potential::a_inverse(ode.p, c), 0.0};
    return {0.0, std::sqrt(c)};
}
}  // namespace

TEST_CASE("endpoint limits") {
    CHECK(std::abs(period({Variant::Rogue, 3}, -0.5 + 1e-6) - 4.442883) < 1e-4);
    CHECK(std::abs(period({Variant::PlusFocusing, 3}, 1e-8) - 2 * pi) < 1e-3);
    CHECK(equilibrium_period({Variant::MinusDefocusing, 2}) == doctest::Approx(2 * pi));
    CHECK(period({Variant::Rogue, 3}, -0.5) == doctest::Approx(2 * pi / std::sqrt(2.0)));
    CHECK(period_derivative_limit_rogue(3) == doctest::Approx(1.66607).epsilon(1e-5));
}

TEST_CASE("quadrature agrees with time of flight") {
    const OdeCase ode{Variant::Rogue, 3};
    const auto orbit = integrate_orbit(ode, start_point(ode, -0.25), 0, 40);
    CHECK(std::abs(period(ode, -0.25) - orbit->period()) < 1e-8);
}

TEST_CASE("derivative matches central differences") {
    const double c = -0.25, h = 1e-5;
    const OdeCase ode{Variant::Rogue, 3};
    const double fd = (period(ode, c + h) - period(ode, c - h)) / (2 * h);
    CHECK(std::abs(period_derivative_rogue(3, c) / fd - 1.0) < 1e-5);
    CHECK(std::abs(period_derivative_rogue(3, -0.5 + 1e-7) / period_derivative_limit_rogue(3) - 1) < 0.01);
}

TEST_CASE("property: period maps are strictly monotone and L' > 0") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        for (auto variant : {Variant::PlusFocusing, Variant::MinusDefocusing, Variant::Rogue}) {
            const PeriodMap map({variant, p});
            auto [lo, hi] = map.domain();
            if (!std::isfinite(hi)) hi = 20.0;
            double prev = NAN;
            for (int i = 1; i < 100; ++i) {
                const double c = lo + (hi - lo) * i / 100.0;
                const double L = map.eval(c);
                if (i > 1) {
                    if (map.increasing()) {
                        CHECK(L > prev);
                    } else {
                        CHECK(L < prev);
                    }
                }
                prev = L;
                if (variant == Variant::Rogue) CHECK(map.derivative(c) > 0.0);
            }
        }
    }
}

TEST_CASE("property: inversion round trip") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        for (auto variant : {Variant::PlusFocusing, Variant::MinusDefocusing, Variant::Rogue}) {
            const PeriodMap map({variant, p});
            auto [lo, hi] = map.domain();
            if (!std::isfinite(hi)) hi = 20.0;
            for (int k = 0; k < 10; ++k) {
                const double c = lo + (hi - lo) * u(rng);
                CHECK(std::abs(map.inverse(map.eval(c)) - c) <= 1e-10 * std::max(1.0, std::abs(c)));
            }
        }
    }
}

TEST_CASE("inverse at the image endpoints") {
    for (double p : {2.0, 3.0}) {
        CHECK(invert_period({Variant::PlusFocusing, p}, 2 * pi) == 0.0);
        CHECK(invert_period({Variant::MinusDefocusing, p}, 2 * pi) == 0.0);
    }
    CHECK(invert_period({Variant::Rogue, 3}, 2 * pi / std::sqrt(2.0)) == -0.5);
    CHECK_THROWS_AS(invert_period({Variant::PlusFocusing, 3}, 7.0), DomainError);
    CHECK_THROWS_AS(invert_period({Variant::Rogue, 3}, 4.0), DomainError);
    CHECK_THROWS_AS(period({Variant::Rogue, 3}, 0.1), DomainError);
}

TEST_CASE("one-sided difference quotient of M at the rogue endpoint") {
    const double p = 3, s0 = 2 * pi / std::sqrt(p - 1);
    const double target = 12 * std::pow(p - 1, 1.5) / (pi * p * (p + 3));
    CHECK(target == doctest::Approx(0.60022).epsilon(1e-5));
    const double h = 1e-6;
    const double q = (invert_period({Variant::Rogue, p}, s0 + h) - (-0.5)) / h;
    CHECK(std::abs(q / target - 1) < 0.01);
}

TEST_CASE("Phi is zero at one and positive elsewhere") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) CHECK(phi_function(p, 1.0) == 0.0);
    CHECK(phi_function(3, 1.2) > 0.0);
    CHECK(phi_function(1.5, 0.5) > 0.0);
    for (double p : {1.5, 2.0, 3.0, 5.0})
        for (double y : {0.1, 0.4, 0.8, 0.99, 1.01, 1.1})
            if (y < potential::homoclinic_peak(p)) CHECK(phi_function(p, y) > 0.0);
}

TEST_CASE("PeriodMap metadata") {
    const PeriodMap rogue({Variant::Rogue, 3});
    CHECK(rogue.domain().first == -0.5);
    CHECK(rogue.domain().second == 0.0);
    CHECK(rogue.image().first == doctest::Approx(2 * pi / std::sqrt(2.0)));
    CHECK(std::isinf(rogue.image().second));
    const PeriodMap plus({Variant::PlusFocusing, 3});
    CHECK_FALSE(plus.increasing());
    CHECK(plus.image().second == doctest::Approx(2 * pi));
    CHECK_THROWS_AS(plus.derivative(1.0), DomainError);
}
