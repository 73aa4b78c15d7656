#include "persist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "persist/error.hpp"

namespace persist {

namespace {

constexpr std::size_t kMinFitPoints = 8;
constexpr double kMinCount = 5.0;  // survival points below kMinCount/n are dropped
constexpr std::size_t kMinHill = 10;

std::size_t draw_index(Rng& rng, std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform_open(rng) * static_cast<double>(n)));
}

double sample_sd(const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

struct Ols {
    double slope = 0.0;
    double slope_se = 0.0;
    std::size_t points = 0;
};

// log S against log t over the window, S >= kMinCount / n
Ols ols_loglog(std::span<const double> times, std::span<const std::size_t> at_risk, std::size_t n,
               std::pair<double, double> window) {
    std::vector<double> lx, ly;
    const double floor = kMinCount / static_cast<double>(n);
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (times[j] < window.first * (1 - 1e-12) || times[j] > window.second * (1 + 1e-12)) continue;
        const double s = static_cast<double>(at_risk[j]) / static_cast<double>(n);
        if (s < floor || s <= 0.0) continue;
        lx.push_back(std::log(times[j]));
        ly.push_back(std::log(s));
    }
    Ols out;
    out.points = lx.size();
    if (lx.size() < 2) return out;
    const double k = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    out.slope = sxy / sxx;
    if (lx.size() > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const double r = ly[i] - my - out.slope * (lx[i] - mx);
            rss += r * r;
        }
        out.slope_se = std::sqrt(rss / (k - 2.0) / sxx);
    }
    return out;
}

void check_window(std::pair<double, double> window, double censor_time) {
    if (!(window.first > 0.0 && window.first < window.second)) {
        throw ParameterError("tail window must satisfy 0 < t_lo < t_hi");
    }
    if (window.second > censor_time * (1 + 1e-12)) {
        throw ParameterError("tail window must end at or before the censoring time");
    }
}

void check_fit_points(const Ols& fit, std::pair<double, double> window) {
    if (fit.points < kMinFitPoints) {
        std::ostringstream os;
        os << "tail window [" << window.first << ", " << window.second << "] has " << fit.points
           << " usable survival points, need " << kMinFitPoints;
        throw ParameterError(os.str());
    }
}

// For each path, the number of grid points it survives past.
std::vector<std::size_t> survival_bins(std::span<const PathSample> samples,
                                       std::span<const double> grid) {
    std::vector<std::size_t> bins(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        bins[i] = s.censored ? grid.size()
                             : static_cast<std::size_t>(
                                   std::lower_bound(grid.begin(), grid.end(), *s.t0) - grid.begin());
    }
    return bins;
}

std::vector<std::size_t> at_risk_from_bins(const std::vector<std::size_t>& hist) {
    // hist[k] paths survive exactly k grid points; at_risk[j] = #{k > j}
    std::vector<std::size_t> at_risk(hist.size() - 1, 0);
    std::size_t acc = 0;
    for (std::size_t j = at_risk.size(); j-- > 0;) {
        acc += hist[j + 1];
        at_risk[j] = acc;
    }
    return at_risk;
}

double bootstrap_slope(const std::vector<std::size_t>& bins, std::span<const double> grid,
                       std::pair<double, double> window, std::uint64_t seed, std::size_t b) {
    Rng rng = make_stream(seed, b);
    const std::size_t n = bins.size();
    std::vector<std::size_t> hist(grid.size() + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++hist[bins[draw_index(rng, n)]];
    const auto at_risk = at_risk_from_bins(hist);
    return ols_loglog(grid, at_risk, n, window).slope;
}

TailFit fit_from_samples(std::span<const PathSample> samples, double censor_time,
                         std::pair<double, double> window, const TailFitOptions& opt,
                         bool parallel) {
    if (samples.empty()) throw ParameterError("no samples");
    check_window(window, censor_time);
    if (opt.resamples < 2) throw ParameterError("bootstrap needs at least two resamples");
    const auto grid = log_grid(window.first, window.second, opt.grid_points);
    const auto bins = survival_bins(samples, grid);
    std::vector<std::size_t> hist(grid.size() + 1, 0);
    for (auto k : bins) ++hist[k];
    const auto fit = ols_loglog(grid, at_risk_from_bins(hist), samples.size(), window);
    check_fit_points(fit, window);

    std::vector<double> slopes(opt.resamples);
    const auto count = static_cast<std::int64_t>(opt.resamples);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < count; ++b) {
            slopes[static_cast<std::size_t>(b)] =
                bootstrap_slope(bins, grid, window, opt.seed, static_cast<std::size_t>(b));
        }
    } else {
        for (std::int64_t b = 0; b < count; ++b) {
            slopes[static_cast<std::size_t>(b)] =
                bootstrap_slope(bins, grid, window, opt.seed, static_cast<std::size_t>(b));
        }
    }
    TailFit out;
    out.exponent_hat = -fit.slope;
    out.std_error = sample_sd(slopes);
    out.window = window;
    out.method = TailMethod::ols;
    out.n_effective = fit.points;
    return out;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0 && hi > lo)) throw ParameterError("log grid needs 0 < lo < hi");
    if (points < 2) throw ParameterError("log grid needs at least two points");
    std::vector<double> g(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

SurvivalCurve survival_curve(std::span<const PathSample> samples, std::span<const double> grid,
                             double censor_time) {
    if (samples.empty()) throw ParameterError("survival curve of an empty sample set");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!(grid[j] > 0.0) || grid[j] > censor_time) {
            throw ParameterError("survival grid must lie in (0, censor_time]");
        }
        if (j > 0 && !(grid[j] > grid[j - 1])) throw ParameterError("survival grid must increase");
    }
    const auto bins = survival_bins(samples, grid);
    std::vector<std::size_t> hist(grid.size() + 1, 0);
    for (auto k : bins) ++hist[k];

    SurvivalCurve c;
    c.times.assign(grid.begin(), grid.end());
    c.at_risk = at_risk_from_bins(hist);
    c.censor_time = censor_time;
    c.n = samples.size();
    c.survival.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        c.survival[j] = static_cast<double>(c.at_risk[j]) / static_cast<double>(c.n);
    }
    return c;
}

std::string to_string(TailMethod m) { return m == TailMethod::ols ? "log-log OLS" : "Hill"; }

TailFit fit_tail_exponent(const SurvivalCurve& curve, std::pair<double, double> window) {
    check_window(window, curve.censor_time);
    if (curve.n == 0) throw ParameterError("empty survival curve");
    const auto fit = ols_loglog(curve.times, curve.at_risk, curve.n, window);
    check_fit_points(fit, window);
    TailFit out;
    out.exponent_hat = -fit.slope;
    out.std_error = fit.slope_se;
    out.window = window;
    out.method = TailMethod::ols;
    out.n_effective = fit.points;
    return out;
}

TailFit fit_tail_exponent(std::span<const PathSample> samples, double censor_time,
                          std::pair<double, double> window, const TailFitOptions& opt) {
    return fit_from_samples(samples, censor_time, window, opt, true);
}

TailFit fit_tail_exponent_serial(std::span<const PathSample> samples, double censor_time,
                                 std::pair<double, double> window, const TailFitOptions& opt) {
    return fit_from_samples(samples, censor_time, window, opt, false);
}

std::vector<TailFit> nested_window_fits(std::span<const PathSample> samples, double censor_time,
                                        const TailFitOptions& opt) {
    std::vector<TailFit> fits;
    for (double f : {100.0, 30.0, 10.0}) {
        fits.push_back(fit_tail_exponent(samples, censor_time, {censor_time / f, censor_time}, opt));
    }
    return fits;
}

TailFit hill_estimator(std::span<const double> samples, std::size_t k) {
    if (k < kMinHill) throw ParameterError("Hill estimator needs k >= 10");
    if (k >= samples.size()) throw ParameterError("Hill estimator needs k < sample count");
    std::vector<double> top(samples.begin(), samples.end());
    std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), top.end(),
                     std::greater<>());
    const double threshold = top[k];
    if (!(threshold > 0.0)) throw ParameterError("Hill estimator needs the top k+1 samples positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += std::log(top[i] / threshold);
    const double index = static_cast<double>(k) / sum;
    TailFit out;
    out.exponent_hat = index;
    out.std_error = index / std::sqrt(static_cast<double>(k));
    out.window = {threshold, *std::max_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k))};
    out.method = TailMethod::hill;
    out.n_effective = k;
    return out;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed-form";
        case Provenance::quadrature: return "quadrature";
        case Provenance::empirical: return "empirical";
    }
    return "unknown";
}

MellinEval empirical_mellin(std::span<const double> samples, double s, std::optional<double> chi,
                            const ResampleOptions& opt) {
    if (samples.empty()) throw ParameterError("empirical Mellin transform of an empty sample set");
    MellinEval out;
    out.s = s;
    out.provenance = Provenance::empirical;
    if (s == 1.0) {
        out.value = 1.0;
        return out;
    }
    if (chi && !(s - 1.0 < *chi)) {
        throw ParameterError("empirical Mellin transform needs s < 1 + chi for a finite mean");
    }
    const std::size_t n = samples.size();
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = std::pow(samples[i], s - 1.0);
    out.value = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(n);
    if (n < 2) return out;

    out.heavy_tail_warning = chi && 2.0 * (s - 1.0) >= *chi;
    if (out.heavy_tail_warning) {
        const auto block = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::pow(static_cast<double>(n), 2.0 / 3.0)));
        const std::size_t blocks = n / block;
        if (blocks >= 2) {
            std::vector<double> means(blocks);
            for (std::size_t b = 0; b < blocks; ++b) {
                means[b] = std::accumulate(q.begin() + static_cast<std::ptrdiff_t>(b * block),
                                           q.begin() + static_cast<std::ptrdiff_t>((b + 1) * block), 0.0) /
                           static_cast<double>(block);
            }
            out.std_error = sample_sd(means) * std::sqrt(static_cast<double>(block) / static_cast<double>(n));
            return out;
        }
    }
    std::vector<double> boot(std::max<std::size_t>(2, opt.resamples));
    for (std::size_t b = 0; b < boot.size(); ++b) {
        Rng rng = make_stream(opt.seed, b);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += q[draw_index(rng, n)];
        boot[b] = sum / static_cast<double>(n);
    }
    out.std_error = sample_sd(boot);
    return out;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ParameterError("KS distance of an empty sample set");
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

MellinSweep mellin_sweep_report(std::span<const double> samples,
                                const std::function<double(double)>& analytic,
                                std::span<const double> s_grid, std::optional<double> chi,
                                const ResampleOptions& opt) {
    MellinSweep out;
    for (double s : s_grid) {
        const auto e = empirical_mellin(samples, s, chi, opt);
        const double a = analytic(s);
        MellinSweepRow row{s, e.value, e.std_error, a, 0.0, (e.value - a) / a, e.heavy_tail_warning};
        if (e.std_error > 0.0) row.z = (e.value - a) / e.std_error;
        out.max_abs_z = std::max(out.max_abs_z, std::abs(row.z));
        out.rows.push_back(row);
    }
    return out;
}

MellinSweep mellin_sweep_report(std::span<const double> samples, const HittingPlaceLaw& law,
                                std::span<const double> s_grid, const ResampleOptions& opt) {
    const double chi = derived_exponents(law.params()).chi;
    return mellin_sweep_report(
        samples, [&](double s) { return hitting_place_mellin(law, s); }, s_grid, chi, opt);
}

std::pair<double, double> survival_ratio_band(const SurvivalCurve& a, const SurvivalCurve& b) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        while (j < b.times.size() && b.times[j] < a.times[i]) ++j;
        if (j == b.times.size()) break;
        if (b.times[j] != a.times[i]) continue;
        if (a.survival[i] > 0.0 && b.survival[j] > 0.0) {
            const double r = a.survival[i] / b.survival[j];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    if (!(lo <= hi)) throw ParameterError("survival curves share no positive grid point");
    return {lo, hi};
}

}  // namespace persist
