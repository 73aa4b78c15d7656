#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "persist/error.hpp"
#include "persist/integrate.hpp"
#include "persist/quadrature.hpp"

using namespace persist;
using std::numbers::pi;

TEST_CASE("adaptive Gauss-Kronrod") {
    const auto r = integrate::adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-14, 1e-14);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
    const auto g = integrate::adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-14, 1e-14);
    CHECK(g.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("power-singular substitution") {
    // int_0^1 x^{-1/2} cos(x) dx with the x^{-1/2} factor absorbed
    const auto r = integrate::power_singular([](double x) { return std::cos(x); }, 0.5, 1.0, 1e-15, 1e-14);
    const double ref = integrate::adaptive([](double w) { return 2.0 * std::cos(w * w); }, 0.0, 1.0, 1e-15, 1e-14).value;
    CHECK(r.value == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("alternating accelerator sums the log 2 series") {
    integrate::AlternatingAccelerator acc;
    for (int n = 1; n <= 40; ++n) acc.push((n % 2 ? 1.0 : -1.0) / n);
    CHECK(std::abs(acc.estimate() - std::log(2.0)) < 1e-12);
    CHECK(std::abs(acc.partial_sum() - std::log(2.0)) > 1e-3);
}

TEST_CASE("Fresnel integrals at nu = 1/2") {
    const double half = std::sqrt(pi / 2);
    CHECK(fresnel_power_integral(0.5, 1.0, TrigKind::cos) == doctest::Approx(half).epsilon(1e-10));
    CHECK(fresnel_power_integral(0.5, 1.0, TrigKind::sin) == doctest::Approx(half).epsilon(1e-10));
    CHECK(fresnel_power_integral(0.5, -1.0, TrigKind::sin) == doctest::Approx(-half).epsilon(1e-10));
    CHECK(fresnel_power_closed_form(0.5, 4.0, TrigKind::cos) == doctest::Approx(half / 2).epsilon(1e-14));
}

TEST_CASE("Fresnel grid against the closed form") {
    for (double nu : {0.15, 0.5, 0.85}) {
        for (double u : {-3.0, 0.2, 7.0}) {
            for (auto k : {TrigKind::cos, TrigKind::sin}) {
                const double cf = fresnel_power_closed_form(nu, u, k);
                CHECK(fresnel_power_integral(nu, u, k) == doctest::Approx(cf).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("damped oscillatory integrals") {
    OscIntegralSpec a;
    a.nu = 1.0;
    a.alpha = 1.0;
    a.damping = 1.0;
    a.linear = 1.0;
    a.kind = TrigKind::sin;
    CHECK(oscillatory_integral(a) == doctest::Approx(0.5).epsilon(1e-10));

    OscIntegralSpec g;
    g.nu = 1.0;
    g.alpha = 2.0;
    g.damping = 1.0;
    g.linear = 1.0;
    g.kind = TrigKind::cos;
    CHECK(oscillatory_integral(g) == doctest::Approx(std::sqrt(pi) / 2 * std::exp(-0.25)).epsilon(1e-10));
}

TEST_CASE("segment budget exhaustion raises AccuracyError") {
    OscIntegralSpec s;
    s.nu = 0.5;
    s.alpha = 1.0;
    s.damping = 1e-6;
    s.linear = 1.0;
    s.kind = TrigKind::cos;
    CHECK_THROWS_AS(oscillatory_integral(s, 1e-14, 3), AccuracyError);
}

TEST_CASE("negative-power moment of the Gaussian X_t") {
    // alpha = 2: X_t ~ N(x + y t, 2 t^3 / 3)
    const auto p = validate_params(2.0, 0.5);
    for (auto [x, y, t, nu] : {std::tuple{0.0, 0.0, 1.5, 0.5}, {-0.4, 0.7, 0.8, 0.3}, {0.2, -1.0, 2.0, 0.8}}) {
        const double m = x + y * t;
        const double sd = std::sqrt(2 * t * t * t / 3);
        auto g = [&](double z) { return std::exp(-0.5 * std::pow((z - m) / sd, 2)) / (sd * std::sqrt(2 * pi)); };
        const double head = integrate::power_singular(g, 1 - nu,
                                                      1.0, 1e-14, 1e-13)
                                .value;
        const double tail =
            integrate::adaptive([&](double z) { return std::pow(z, -nu) * g(z); }, 1.0, m + 40 * sd + 1, 1e-15, 1e-13)
                .value;
        CHECK(mellin_xplus(x, y, t, nu, p) == doctest::Approx(head + tail).epsilon(1e-7));
    }
}

TEST_CASE("integrated Mellin transform on the axes") {
    for (auto [a, r] : {std::pair{2.0, 0.5}, {1.5, 0.5}, {0.8, 0.4}}) {
        const auto p = validate_params(a, r);
        const double nu = 0.5 * (a / (a + 1) + 1);
        for (auto c : {AxisCase::y_pos, AxisCase::y_neg, AxisCase::x_neg}) {
            const auto cmp = integrated_mellin_axis(c, c == AxisCase::y_pos ? 1.0 : -1.0, nu, p);
            CHECK(cmp.relative_error() < 1e-6);
        }
    }
}
