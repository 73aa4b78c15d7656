#include "persist/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "persist/error.hpp"

namespace persist {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double sample_standard_stable(double alpha, double beta, Rng& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("stable index must lie in (0, 2]");
    if (!(beta >= -1.0 && beta <= 1.0)) throw ParameterError("skewness must lie in [-1, 1]");
    const double v = kPi * (uniform_open(rng) - 0.5);
    const double w = standard_exponential(rng);
    if (alpha == 1.0) {
        const double pv = kPi / 2.0 + beta * v;
        return 2.0 / kPi * (pv * std::tan(v) - beta * std::log((kPi / 2.0) * w * std::cos(v) / pv));
    }
    const double t = beta * std::tan(kPi * alpha / 2.0);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
    return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

IncrementSampler::IncrementSampler(const StableParams& p)
    : alpha_(p.alpha()),
      inv_alpha_(1.0 / p.alpha()),
      // atan(beta tan(pi alpha/2)) / alpha = pi (rho - 1/2) on the admissible set
      shift_(kPi * (p.rho() - 0.5)),
      exponent_((1.0 - p.alpha()) / p.alpha()),
      cauchy_scale_(std::sin(kPi * p.rho())),
      cauchy_drift_(-std::cos(kPi * p.rho())) {}

double IncrementSampler::operator()(double h, Rng& rng) {
    if (alpha_ == 1.0) {
        const double v = kPi * (uniform_open(rng) - 0.5);
        return h * (cauchy_scale_ * std::tan(v) + cauchy_drift_);
    }
    if (h != last_h_) {
        last_h_ = h;
        last_scale_ = alpha_ == 2.0 ? std::sqrt(2.0 * h) : std::pow(h, inv_alpha_);
    }
    if (alpha_ == 2.0) return last_scale_ * normal_(rng);
    // (kappa h)^{1/alpha} times CMS; the CMS scale factor is kappa^{-1/alpha}
    const double v = kPi * (uniform_open(rng) - 0.5);
    const double w = standard_exponential(rng);
    const double a = alpha_ * (v + shift_);
    return last_scale_ * std::sin(a) / std::pow(std::cos(v), inv_alpha_) *
           std::pow(std::cos(v - a) / w, exponent_);
}

double sample_L_increment(double h, const StableParams& p, Rng& rng) {
    if (!(h > 0.0)) throw ParameterError("increment length must be positive");
    if (p.alpha() == 1.0) {
        const double c = sample_standard_stable(1.0, 0.0, rng);
        return std::sin(kPi * p.rho()) * h * c - h * std::cos(kPi * p.rho());
    }
    return std::pow(p.kappa() * h, 1.0 / p.alpha()) * sample_standard_stable(p.alpha(), p.beta(), rng);
}

void check_path_config(const PathConfig& cfg) {
    if (!(cfg.h > 0.0)) throw ParameterError("step h must be positive");
    if (!(cfg.t_max >= cfg.h)) throw ParameterError("horizon t_max must be at least h");
    if (!(cfg.rel_step >= 0.0)) throw ParameterError("rel_step must be nonnegative");
    if (!std::isfinite(cfg.x0) || !std::isfinite(cfg.y0)) throw ParameterError("start must be finite");
    if (cfg.x0 == 0.0 && cfg.y0 == 0.0) throw ParameterError("start (0, 0) is not supported");
}

PathSample simulate_path(const PathConfig& cfg) {
    check_path_config(cfg);
    const bool flip = cfg.x0 > 0.0 || (cfg.x0 == 0.0 && cfg.y0 > 0.0);
    const StableParams p = flip ? cfg.params.dual() : cfg.params;
    double x = flip ? -cfg.x0 : cfg.x0;
    double l = flip ? -cfg.y0 : cfg.y0;

    Rng rng(cfg.seed);
    IncrementSampler increment(p);
    const double q = p.alpha() / (p.alpha() + 1.0);
    const bool adaptive = cfg.rel_step > 0.0;

    PathSample out;
    out.seed_used = cfg.seed;
    double t = 0.0;
    std::int64_t steps = 0;
    while (t < cfg.t_max) {
        double step = cfg.h;
        if (adaptive) {
            double reach = std::pow(-x, q);
            if (l != 0.0) reach = std::min(reach, -x / std::abs(l));
            step = std::max(cfg.h, cfg.rel_step * reach);
        }
        const double x_new = x + l * step;
        ++steps;
        if (x_new >= 0.0) {
            const double t0 = t + (-x / l);
            out.steps_taken = steps;
            if (t0 <= cfg.t_max) {
                out.censored = false;
                out.t0 = t0;
                out.hitting_place = flip ? -l : l;
            }
            return out;
        }
        l += increment(step, rng);
        x = x_new;
        t += step;
    }
    out.steps_taken = steps;
    return out;
}

std::vector<double> HittingBatch::hitting_places() const {
    std::vector<double> v;
    v.reserve(samples.size() - censored);
    for (const auto& s : samples) {
        if (!s.censored) v.push_back(*s.hitting_place);
    }
    return v;
}

std::vector<double> HittingBatch::hitting_times() const {
    std::vector<double> v;
    v.reserve(samples.size() - censored);
    for (const auto& s : samples) {
        if (!s.censored) v.push_back(*s.t0);
    }
    return v;
}

namespace {

HittingBatch collect(std::vector<PathSample> samples) {
    HittingBatch b;
    b.censored = static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](const PathSample& s) { return s.censored; }));
    b.samples = std::move(samples);
    return b;
}

double simulate_X_one(const StableParams& p, double x0, double y0, double dt, std::int64_t steps,
                      std::uint64_t seed) {
    Rng rng(seed);
    IncrementSampler increment(p);
    double x = x0;
    double l = y0;
    for (std::int64_t k = 0; k < steps; ++k) {
        x += l * dt;
        l += increment(dt, rng);
    }
    return x;
}

void check_X_args(double t, double h) {
    if (!(t > 0.0)) throw ParameterError("time must be positive");
    if (!(h > 0.0)) throw ParameterError("step h must be positive");
}

std::int64_t step_count(double t, double h) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t / h - 1e-9)));
}

}  // namespace

HittingBatch sample_hitting_batch(const PathConfig& cfg, std::size_t n, std::uint64_t first_index) {
    check_path_config(cfg);
    std::vector<PathSample> samples(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
        PathConfig c = cfg;
        c.seed = stream_seed(cfg.seed, first_index + static_cast<std::uint64_t>(i));
        samples[static_cast<std::size_t>(i)] = simulate_path(c);
    }
    return collect(std::move(samples));
}

HittingBatch sample_hitting_batch_serial(const PathConfig& cfg, std::size_t n,
                                         std::uint64_t first_index) {
    check_path_config(cfg);
    std::vector<PathSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        PathConfig c = cfg;
        c.seed = stream_seed(cfg.seed, first_index + i);
        samples[i] = simulate_path(c);
    }
    return collect(std::move(samples));
}

std::vector<double> simulate_X(const StableParams& p, double x0, double y0, double t, double h,
                               std::size_t n, std::uint64_t seed) {
    check_X_args(t, h);
    const std::int64_t steps = step_count(t, h);
    const double dt = t / static_cast<double>(steps);
    std::vector<double> out(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            simulate_X_one(p, x0, y0, dt, steps, stream_seed(seed, static_cast<std::uint64_t>(i)));
    }
    return out;
}

std::vector<double> simulate_X_serial(const StableParams& p, double x0, double y0, double t,
                                      double h, std::size_t n, std::uint64_t seed) {
    check_X_args(t, h);
    const std::int64_t steps = step_count(t, h);
    const double dt = t / static_cast<double>(steps);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = simulate_X_one(p, x0, y0, dt, steps, stream_seed(seed, i));
    }
    return out;
}

}  // namespace persist
