#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "persist/error.hpp"
#include "persist/random.hpp"
#include "persist/stats.hpp"

using namespace persist;

namespace {

PathSample hit(double t) {
    PathSample s;
    s.t0 = t;
    s.hitting_place = 1.0;
    s.censored = false;
    return s;
}

PathSample censored() { return PathSample{}; }

// Pareto hitting times with P[T > t] = t^{-theta}, t >= 1.
std::vector<PathSample> pareto_paths(double theta, std::size_t n, double censor, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<PathSample> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::pow(uniform_open(rng), -1.0 / theta);
        out.push_back(t <= censor ? hit(t) : censored());
    }
    return out;
}

}  // namespace

TEST_CASE("survival curve by hand") {
    const std::vector<PathSample> s = {hit(0.5), hit(1.5), hit(2.5), censored()};
    const std::vector<double> grid = {1.0, 2.0, 3.0};
    const auto c = survival_curve(s, grid, 3.0);
    CHECK(c.n == 4);
    CHECK(c.survival == std::vector<double>{0.75, 0.5, 0.25});
    CHECK(c.at_risk == std::vector<std::size_t>{3, 2, 1});
}

TEST_CASE("log grid") {
    const auto g = log_grid(1.0, 1000.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g[3] == doctest::Approx(1000.0));
}

TEST_CASE("OLS fit on an exact power curve") {
    SurvivalCurve c;
    c.n = 1000000;
    c.censor_time = 1e3;
    c.times = log_grid(10.0, 1e3, 20);
    for (double t : c.times) {
        c.survival.push_back(std::pow(t, -0.3));
        c.at_risk.push_back(static_cast<std::size_t>(std::llround(c.n * std::pow(t, -0.3))));
    }
    const auto f = fit_tail_exponent(c, {10.0, 1e3});
    CHECK(f.exponent_hat == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(f.n_effective == 20);
    CHECK(f.method == TailMethod::ols);
}

TEST_CASE("OLS fit with bootstrap on Pareto paths") {
    const auto s = pareto_paths(0.25, 100000, 1e3, 31);
    const auto f = fit_tail_exponent(s, 1e3, {10.0, 1e3}, {40, 200, 1});
    CHECK(f.std_error > 0.0);
    CHECK(std::abs(f.exponent_hat - 0.25) < 4 * f.std_error);
    const auto g = fit_tail_exponent_serial(s, 1e3, {10.0, 1e3}, {40, 200, 1});
    CHECK(f.exponent_hat == g.exponent_hat);
    CHECK(f.std_error == g.std_error);
}

TEST_CASE("nested windows") {
    const auto s = pareto_paths(0.25, 50000, 1e3, 5);
    const auto fits = nested_window_fits(s, 1e3, {40, 100, 2});
    REQUIRE(fits.size() == 3);
    CHECK(fits[0].window.first == doctest::Approx(10.0));
    CHECK(fits[2].window.first == doctest::Approx(100.0));
}

TEST_CASE("Hill estimator on Pareto samples") {
    Rng rng(77);
    std::vector<double> x(200000);
    for (auto& v : x) v = std::pow(uniform_open(rng), -1.0 / 0.5);
    const auto f = hill_estimator(x, 4000);
    CHECK(f.method == TailMethod::hill);
    CHECK(f.std_error == doctest::Approx(f.exponent_hat / std::sqrt(4000.0)));
    CHECK(std::abs(f.exponent_hat - 0.5) < 3 * f.std_error);
    CHECK_THROWS_AS(hill_estimator(x, x.size()), ParameterError);
}

TEST_CASE("empirical Mellin transform of exponential samples") {
    // E[E^{s-1}] = Gamma(s)
    Rng rng(12);
    std::vector<double> x(100000);
    for (auto& v : x) v = standard_exponential(rng);
    const auto one = empirical_mellin(x, 1.0);
    CHECK(one.value == 1.0);
    for (double s : {0.7, 1.5, 2.0}) {
        const auto m = empirical_mellin(x, s, std::nullopt, {200, 3});
        CHECK(m.std_error > 0.0);
        CHECK(std::abs(m.value - std::tgamma(s)) < 4 * m.std_error);
        CHECK_FALSE(m.heavy_tail_warning);
    }
}

TEST_CASE("empirical Mellin transform respects the tail index") {
    std::vector<double> x(1000, 2.0);
    CHECK_THROWS_AS(empirical_mellin(x, 1.6, 0.5), ParameterError);
    CHECK(empirical_mellin(x, 1.3, 0.5).heavy_tail_warning);
    CHECK_FALSE(empirical_mellin(x, 1.2, 0.5).heavy_tail_warning);
}

TEST_CASE("KS distance") {
    const std::vector<double> one = {0.5};
    auto uniform = [](double v) { return std::clamp(v, 0.0, 1.0); };
    CHECK(ks_distance(one, uniform) == doctest::Approx(0.5));
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back((i - 0.5) / 1000);
    CHECK(ks_distance(grid, uniform) == doctest::Approx(0.0005));
}

TEST_CASE("Mellin sweep against an analytic function") {
    Rng rng(4);
    std::vector<double> x(50000);
    for (auto& v : x) v = standard_exponential(rng);
    const std::vector<double> s = {0.6, 0.9};
    const auto sweep = mellin_sweep_report(x, [](double q) { return std::tgamma(q); }, s, std::nullopt, {200, 1});
    REQUIRE(sweep.rows.size() == 2);
    CHECK(sweep.max_abs_z < 4.0);
}

TEST_CASE("survival ratio band") {
    SurvivalCurve a, b;
    a.times = b.times = {1.0, 2.0};
    a.survival = {0.5, 0.2};
    b.survival = {0.25, 0.2};
    const auto [lo, hi] = survival_ratio_band(a, b);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(2.0));
}
