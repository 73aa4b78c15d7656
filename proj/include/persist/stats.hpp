#pragma once

// Estimators that connect simulated first-passage data to the analytic laws:
// survival curves and tail exponents, Hill estimates, empirical Mellin
// transforms with resampling error bars, and KS distances.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "persist/analytic.hpp"
#include "persist/simulate.hpp"

namespace persist {

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> survival;
    std::vector<std::size_t> at_risk;  // paths with t0 > time (censored ones included)
    double censor_time = 0.0;
    std::size_t n = 0;
};

/// Survival on `grid` (increasing, within (0, censor_time]).
SurvivalCurve survival_curve(std::span<const PathSample> samples, std::span<const double> grid,
                             double censor_time);

std::vector<double> log_grid(double lo, double hi, std::size_t points);

enum class TailMethod { ols, hill };
std::string to_string(TailMethod m);

struct TailFit {
    double exponent_hat = 0.0;
    double std_error = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    TailMethod method = TailMethod::ols;
    std::size_t n_effective = 0;  // grid points used (ols) or order statistics (hill)
};

/// Negated OLS slope of log S against log t over the window; points with
/// S < 5/n are dropped. The standard error is the OLS one, since a curve
/// carries no path-level information.
TailFit fit_tail_exponent(const SurvivalCurve& curve, std::pair<double, double> window);

struct TailFitOptions {
    std::size_t grid_points = 40;
    std::size_t resamples = 500;
    std::uint64_t seed = 0;
};

/// Same fit from path samples with a path-level bootstrap standard error.
TailFit fit_tail_exponent(std::span<const PathSample> samples, double censor_time,
                          std::pair<double, double> window, const TailFitOptions& opt = {});
TailFit fit_tail_exponent_serial(std::span<const PathSample> samples, double censor_time,
                                 std::pair<double, double> window, const TailFitOptions& opt = {});

/// Fits on [t_max/100, t_max], [t_max/30, t_max], [t_max/10, t_max].
std::vector<TailFit> nested_window_fits(std::span<const PathSample> samples, double censor_time,
                                        const TailFitOptions& opt = {});

/// Hill estimate of the survival tail index from the k largest samples;
/// std_error = index / sqrt(k).
TailFit hill_estimator(std::span<const double> samples, std::size_t k);

enum class Provenance { closed_form, quadrature, empirical };
std::string to_string(Provenance p);

struct MellinEval {
    double s = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    Provenance provenance = Provenance::empirical;
    bool heavy_tail_warning = false;  // 2(s-1) >= chi: subsampling SE in use
};

struct ResampleOptions {
    std::size_t resamples = 500;
    std::uint64_t seed = 0;
};

/// Sample mean of x^{s-1}. If chi is given, requires s < 1 + chi and switches
/// to a subsampling SE (blocks of n^{2/3}) when 2(s-1) >= chi; otherwise the
/// SE is a bootstrap over samples.
MellinEval empirical_mellin(std::span<const double> samples, double s,
                            std::optional<double> chi = std::nullopt,
                            const ResampleOptions& opt = {});

/// sup |F_n - F| over the sample points.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct MellinSweepRow {
    double s;
    double empirical;
    double std_error;
    double analytic;
    double z;
    double relative_deviation;
    bool heavy_tail_warning;
};

struct MellinSweep {
    std::vector<MellinSweepRow> rows;
    double max_abs_z = 0.0;
};

MellinSweep mellin_sweep_report(std::span<const double> samples, const HittingPlaceLaw& law,
                                std::span<const double> s_grid, const ResampleOptions& opt = {});
/// Variant against an arbitrary analytic Mellin function s -> E[L^{s-1}].
MellinSweep mellin_sweep_report(std::span<const double> samples,
                                const std::function<double(double)>& analytic,
                                std::span<const double> s_grid, std::optional<double> chi,
                                const ResampleOptions& opt = {});

/// Range of S_a(t)/S_b(t) over the common grid where both are positive.
/// Diagnostic only.
std::pair<double, double> survival_ratio_band(const SurvivalCurve& a, const SurvivalCurve& b);

}  // namespace persist
