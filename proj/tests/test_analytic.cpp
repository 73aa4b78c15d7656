#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "persist/analytic.hpp"
#include "persist/error.hpp"
#include "persist/integrate.hpp"
#include "persist/random.hpp"

using namespace persist;
using std::numbers::pi;

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate_params(2.0, 0.5));
    CHECK_NOTHROW(validate_params(1.5, 0.5));
    CHECK_NOTHROW(validate_params(0.5, 0.3));
    CHECK_THROWS_AS(validate_params(2.0, 0.3), ParameterError);
    CHECK_THROWS_AS(validate_params(1.5, 0.9), ParameterError);
    CHECK_THROWS_AS(validate_params(0.5, 1.0), ParameterError);
    CHECK_THROWS_AS(validate_params(2.5, 0.5), ParameterError);
    CHECK_THROWS_AS(validate_params(0.0, 0.5), ParameterError);
    try {
        validate_params(1.5, 0.9);
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("rho") != std::string::npos);
    }
}

TEST_CASE("dual flips rho") {
    const auto p = validate_params(1.5, 0.4);
    CHECK(p.dual().rho() == doctest::Approx(0.6));
    CHECK(p.dual().dual() == p);
}

TEST_CASE("Brownian exponents") {
    const auto d = derived_exponents(validate_params(2.0, 0.5));
    CHECK(d.theta == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(d.chi == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.sigma == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("exponent relations") {
    for (auto [a, r] : {std::pair{0.5, 0.3}, {1.0, 0.7}, {1.5, 0.4}, {1.8, 0.5}}) {
        const auto d = derived_exponents(validate_params(a, r));
        CHECK(d.chi == doctest::Approx(a * d.theta).epsilon(1e-14));
        CHECK(d.delta == doctest::Approx((1 + d.chi) / 2).epsilon(1e-14));
        CHECK(d.theta == doctest::Approx(r / (1 + a * (1 - r))).epsilon(1e-14));
    }
}

TEST_CASE("characteristic exponent of Brownian L has unit-two variance") {
    const auto p = validate_params(2.0, 0.5);
    const auto psi = char_exponent_L(1.3, p);
    CHECK(psi.real() == doctest::Approx(-1.69).epsilon(1e-14));
    CHECK(std::abs(psi.imag()) < 1e-14);
}

TEST_CASE("characteristic exponent of X for Brownian L") {
    // X_t = x + y t + int_0^t L: Gaussian with variance 2 t^3 / 3
    const auto p = validate_params(2.0, 0.5);
    const double t = 1.7, x = 0.3, y = -0.8, l = 0.9;
    const auto c = char_exponent_X(l, t, x, y, p);
    CHECK(c.real() == doctest::Approx(-l * l * t * t * t / 3).epsilon(1e-12));
    CHECK(c.imag() == doctest::Approx(l * (x + y * t)).epsilon(1e-12));
}

TEST_CASE("mu-Cauchy Mellin transform against quadrature of its density") {
    for (double mu : {0.3, 0.5, 0.8}) {
        for (double s : {-0.4, 0.2, 0.6}) {
            // substitute x = e^u
            auto f = [&](double u) { return std::exp(u * (s + 1)) * cauchy_mu_density(mu, std::exp(u)); };
            const auto r = integrate::adaptive(f, -80.0, 80.0, 1e-13, 1e-12, 20000);
            CHECK(mellin_cauchy_mu(mu, s) == doctest::Approx(r.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("positive 1/2-stable Mellin transform matches the Levy law") {
    // Z = 1/(4G), G ~ Gamma(1/2): E[Z^s] = 4^{-s} Gamma(1/2 - s) / Gamma(1/2)
    for (double s : {-1.0, -0.3, 0.2, 0.45}) {
        const double ref = std::pow(4.0, -s) * std::tgamma(0.5 - s) / std::sqrt(pi);
        CHECK(mellin_positive_stable(0.5, s) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("positive stable sampler") {
    Rng rng(11);
    const int n = 200000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = std::pow(sample_positive_stable(0.7, rng), -0.5);
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::abs(mean - mellin_positive_stable(0.7, -0.5)) < 4 * se);
}

TEST_CASE("Gamma and Beta Mellin transforms") {
    CHECK(mellin_gamma_variable(2.0, 1.0) == doctest::Approx(2.0));
    CHECK(mellin_gamma_variable(3.0, 2.0) == doctest::Approx(12.0));
    CHECK(mellin_beta_variable(2.0, 3.0, 1.0) == doctest::Approx(0.4));
}

TEST_CASE("hitting place laws are normalized at s = 1") {
    for (auto [a, r] : {std::pair{0.5, 0.3}, {1.0, 0.5}, {1.5, 0.4}, {2.0, 0.5}}) {
        const auto p = validate_params(a, r);
        for (auto axis : {Axis::vertical, Axis::horizontal}) {
            CHECK(hitting_place_mellin(HittingPlaceLaw(p, axis, -1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("hitting place coordinate scaling") {
    // vertical: L scales like |y|; horizontal: like |x|^{1/(alpha+1)}
    const auto p = validate_params(1.5, 0.5);
    const double s = 0.6;
    const double v1 = hitting_place_mellin(HittingPlaceLaw(p, Axis::vertical, -1.0), s);
    const double v3 = hitting_place_mellin(HittingPlaceLaw(p, Axis::vertical, -3.0), s);
    CHECK(v3 == doctest::Approx(std::pow(3.0, s - 1) * v1).epsilon(1e-12));
    const double h1 = hitting_place_mellin(HittingPlaceLaw(p, Axis::horizontal, -1.0), s);
    const double h3 = hitting_place_mellin(HittingPlaceLaw(p, Axis::horizontal, -3.0), s);
    CHECK(h3 == doctest::Approx(std::pow(3.0, (s - 1) / 2.5) * h1).epsilon(1e-12));
}

TEST_CASE("start off the negative half-axis is rejected") {
    const auto p = validate_params(2.0, 0.5);
    CHECK_THROWS_AS(HittingPlaceLaw(p, Axis::vertical, 1.0), ParameterError);
}

TEST_CASE("vertical density integrates to its Mellin transform") {
    for (auto [a, r] : {std::pair{2.0, 0.5}, {1.2, 0.6}, {0.7, 0.4}}) {
        const HittingPlaceLaw law(validate_params(a, r), Axis::vertical, -2.0);
        for (double s : {1.0, 0.5, 1.1}) {
            auto f = [&](double u) {
                const double z = std::exp(u);
                return std::pow(z, s) * hitting_place_density_vertical(law, z);
            };
            const auto res = integrate::adaptive(f, -200.0, 200.0, 1e-13, 1e-11, 20000);
            CHECK(res.value == doctest::Approx(hitting_place_mellin(law, s)).epsilon(1e-7));
        }
    }
}

TEST_CASE("product identities hold where a representation is known") {
    for (auto [a, r] : {std::pair{2.0, 0.5}, {1.0, 0.5}, {0.6, 0.5}, {1.5, 0.34}}) {
        const auto p = validate_params(a, r);
        for (double s : {0.3, 0.7}) {
            const auto id = mellin_product_identity(p, s);
            REQUIRE(id.rhs.has_value());
            CHECK(id.lhs == doctest::Approx(*id.rhs).epsilon(1e-10));
        }
    }
    CHECK(mellin_product_identity(validate_params(1.5, 0.6), 0.5).form == ProductForm::unresolved);
}

TEST_CASE("size-biased power Cauchy quantile inverts the cdf") {
    const SizeBiasedPowerCauchy law(0.5, 2.0 / 3.0);
    for (double u : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999}) {
        CHECK(law.cdf(law.quantile(u)) == doctest::Approx(u).epsilon(1e-8));
    }
}

TEST_CASE("closed-form sampler matches the Mellin transform") {
    const HittingPlaceLaw law(validate_params(1.5, 0.5), Axis::vertical, -1.0);
    const HittingPlaceSampler sample(law);
    Rng rng(5);
    const int n = 400000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = std::pow(sample(rng), -0.5);
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::abs(mean - hitting_place_mellin(law, 0.5)) < 4 * se);
}

TEST_CASE("horizontal sampler outside alpha in {1, 2} is unsupported") {
    const HittingPlaceLaw law(validate_params(1.5, 0.5), Axis::horizontal, -1.0);
    CHECK_THROWS_AS(HittingPlaceSampler{law}, UnsupportedCase);
}
