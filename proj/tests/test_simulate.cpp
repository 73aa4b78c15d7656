#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "persist/analytic.hpp"
#include "persist/error.hpp"
#include "persist/simulate.hpp"

using namespace persist;

namespace {

// Empirical characteristic function against exp(h Psi(l)).
void check_cf(const StableParams& p, double h, std::uint64_t seed) {
    Rng rng(seed);
    IncrementSampler inc(p);
    const int n = 200000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = inc(h, rng);
    for (double l : {0.3, 1.0, 2.5}) {
        std::complex<double> acc = 0.0;
        for (double d : draws) acc += std::exp(std::complex<double>(0.0, l * d));
        acc /= double(n);
        const auto ref = std::exp(h * char_exponent_L(l, p));
        CHECK(std::abs(acc - ref) < 5.0 / std::sqrt(double(n)));
    }
}

}  // namespace

TEST_CASE("increments have the target characteristic function") {
    check_cf(validate_params(2.0, 0.5), 0.3, 1);
    check_cf(validate_params(1.5, 0.4), 0.7, 2);
    check_cf(validate_params(1.0, 0.7), 0.5, 3);
    check_cf(validate_params(0.6, 0.3), 1.0, 4);
    check_cf(validate_params(1.2, 0.55), 2.0, 5);
}

TEST_CASE("positivity parameter is P[L_1 >= 0]") {
    for (auto [a, r] : {std::pair{1.5, 0.4}, {0.6, 0.3}, {1.0, 0.7}}) {
        const auto p = validate_params(a, r);
        Rng rng(9);
        const int n = 200000;
        int pos = 0;
        for (int i = 0; i < n; ++i) pos += sample_L_increment(1.0, p, rng) >= 0.0;
        CHECK(std::abs(double(pos) / n - r) < 4 * std::sqrt(r * (1 - r) / n));
    }
}

TEST_CASE("standard stable: Gaussian and Cauchy cases") {
    Rng rng(3);
    const int n = 200000;
    double s2 = 0.0;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        const double g = sample_standard_stable(2.0, 0.0, rng);
        s2 += g * g;
        inside += std::abs(sample_standard_stable(1.0, 0.0, rng)) < 1.0;
    }
    CHECK(s2 / n == doctest::Approx(2.0).epsilon(0.02));
    CHECK(std::abs(double(inside) / n - 0.5) < 0.005);
}

TEST_CASE("path configuration checks") {
    PathConfig c;
    c.h = 0.0;
    CHECK_THROWS_AS(check_path_config(c), ParameterError);
    c.h = 10.0;
    c.t_max = 1.0;
    CHECK_THROWS_AS(check_path_config(c), ParameterError);
    c = PathConfig{};
    c.rel_step = -1.0;
    CHECK_THROWS_AS(check_path_config(c), ParameterError);
    c = PathConfig{};
    c.x0 = 0.0;
    c.y0 = 0.0;
    CHECK_THROWS_AS(check_path_config(c), ParameterError);
}

TEST_CASE("paths are reproducible and well formed") {
    PathConfig c;
    c.seed = 42;
    c.t_max = 50.0;
    const auto a = simulate_path(c);
    const auto b = simulate_path(c);
    CHECK(a.censored == b.censored);
    CHECK(a.steps_taken == b.steps_taken);
    if (!a.censored) {
        CHECK(*a.t0 == *b.t0);
        CHECK(*a.t0 > 0.0);
        CHECK(*a.t0 <= c.t_max);
        CHECK(*a.hitting_place > 0.0);  // X rises through 0 from below
    }
}

TEST_CASE("dual start mirrors the hitting place") {
    PathConfig c;
    c.seed = 7;
    c.params = validate_params(1.5, 0.5);
    c.y0 = 1.0;
    c.t_max = 1e6;
    c.rel_step = 0.01;
    const auto s = simulate_path(c);
    REQUIRE_FALSE(s.censored);
    CHECK(*s.hitting_place < 0.0);
}

TEST_CASE("parallel batch equals the serial reference bit for bit") {
    PathConfig c;
    c.params = validate_params(1.5, 0.45);
    c.seed = 2024;
    c.t_max = 100.0;
    c.rel_step = 0.01;
    const auto par = sample_hitting_batch(c, 500, 17);
    const auto ser = sample_hitting_batch_serial(c, 500, 17);
    CHECK(par.censored == ser.censored);
    REQUIRE(par.samples.size() == ser.samples.size());
    for (std::size_t i = 0; i < par.samples.size(); ++i) {
        CHECK(par.samples[i].seed_used == ser.samples[i].seed_used);
        CHECK(par.samples[i].t0 == ser.samples[i].t0);
        CHECK(par.samples[i].hitting_place == ser.samples[i].hitting_place);
    }
    CHECK(par.hitting_places().size() == 500 - par.censored);
}

TEST_CASE("X_t moments for Brownian L") {
    const auto p = validate_params(2.0, 0.5);
    const double t = 1.0, h = 1e-3, x0 = 0.5, y0 = -1.0;
    const auto xs = simulate_X(p, x0, y0, t, h, 20000, 8);
    CHECK(xs == simulate_X_serial(p, x0, y0, t, h, 20000, 8));
    double m = 0.0, v = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    for (double x : xs) v += (x - m) * (x - m);
    v /= xs.size() - 1;
    const double var = 2.0 * t * t * t / 3.0;
    CHECK(std::abs(m - (x0 + y0 * t)) < 4 * std::sqrt(var / xs.size()));
    CHECK(v == doctest::Approx(var).epsilon(0.05));
}
