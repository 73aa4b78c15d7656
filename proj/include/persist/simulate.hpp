#pragma once

// Monte Carlo for the Kolmogorov pair (X, L): stable variates, Euler paths
// with exact in-step crossing interpolation, and seeded batches.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "persist/analytic.hpp"

namespace persist {

/// Chambers-Mallows-Stuck draw with characteristic function
/// exp(-|l|^alpha (1 - i beta tan(pi alpha/2) sgn l)), alpha != 1, and
/// exp(-|l| (1 + i beta (2/pi) sgn(l) ln|l|)) for alpha = 1.
double sample_standard_stable(double alpha, double beta, Rng& rng);

/// Increments of L over a step of length h: characteristic function
/// exp(h Psi(lambda)). Holds the per-parameter constants; cheap to copy.
class IncrementSampler {
public:
    explicit IncrementSampler(const StableParams& p);
    double operator()(double h, Rng& rng);

private:
    double alpha_;
    double inv_alpha_;
    double shift_;      // B of the CMS construction
    double exponent_;   // (1 - alpha) / alpha
    double cauchy_scale_;
    double cauchy_drift_;
    double last_h_ = -1.0;
    double last_scale_ = 0.0;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

double sample_L_increment(double h, const StableParams& p, Rng& rng);

struct PathConfig {
    StableParams params = validate_params(2.0, 0.5);
    double x0 = 0.0;
    double y0 = -1.0;
    double h = 1e-3;
    double t_max = 1e3;
    std::uint64_t seed = 0;
    /// Scale-adaptive stepping: when > 0 the step is
    /// max(h, rel_step * min(|x|/|l|, |x|^{alpha/(alpha+1)})),
    /// so h only binds close to the axis. 0 keeps the fixed step h.
    double rel_step = 0.0;
};

struct PathSample {
    std::optional<double> t0;
    std::optional<double> hitting_place;
    bool censored = true;
    std::uint64_t seed_used = 0;
    std::int64_t steps_taken = 0;
};

/// Throws ParameterError for an unsupported start, h <= 0, h > t_max or
/// rel_step < 0. Starts with x0 > 0 (or x0 = 0, y0 > 0) are mapped to the
/// dual process.
void check_path_config(const PathConfig& cfg);

/// One path driven by Rng(cfg.seed).
PathSample simulate_path(const PathConfig& cfg);

struct HittingBatch {
    std::vector<PathSample> samples;
    std::size_t censored = 0;

    std::vector<double> hitting_places() const;  // uncensored paths, path order
    std::vector<double> hitting_times() const;   // uncensored paths, path order
};

/// Paths first_index .. first_index+n-1; path i uses stream_seed(cfg.seed, i).
/// OpenMP-parallel over paths; identical to the serial version bit for bit.
HittingBatch sample_hitting_batch(const PathConfig& cfg, std::size_t n,
                                  std::uint64_t first_index = 0);
HittingBatch sample_hitting_batch_serial(const PathConfig& cfg, std::size_t n,
                                         std::uint64_t first_index = 0);

/// X_t for n paths started at (x0, y0): ceil(t/h) equal Euler steps.
std::vector<double> simulate_X(const StableParams& p, double x0, double y0, double t, double h,
                               std::size_t n, std::uint64_t seed);
std::vector<double> simulate_X_serial(const StableParams& p, double x0, double y0, double t,
                                      double h, std::size_t n, std::uint64_t seed);

}  // namespace persist
