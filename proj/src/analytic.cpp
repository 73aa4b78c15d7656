#include "persist/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "persist/error.hpp"
#include "persist/integrate.hpp"
#include "persist/special.hpp"

namespace persist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;

std::string describe(double alpha, double rho) {
    std::ostringstream os;
    os.precision(17);
    os << "(alpha=" << alpha << ", rho=" << rho << ")";
    return os.str();
}

// Positive-stable Mellin transform, also accepting the degenerate mu = 1.
double positive_stable_moment(double mu, double s) {
    return std::tgamma(1.0 - s / mu) / std::tgamma(1.0 - s);
}

}  // namespace

StableParams validate_params(double alpha, double rho) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 2.0) {
        throw ParameterError("alpha must lie in (0, 2]: got " + describe(alpha, rho));
    }
    if (!std::isfinite(rho) || rho < 0.0 || rho > 1.0) {
        throw ParameterError("rho must lie in [0, 1]: got " + describe(alpha, rho));
    }
    if (alpha == 2.0) {
        if (std::abs(rho - 0.5) > kBoundaryTol) {
            throw ParameterError("alpha = 2 forces rho = 1/2: got " + describe(alpha, rho));
        }
        return StableParams(2.0, 0.5, 0.0, 1.0);
    }
    if (alpha > 1.0) {
        const double lo = 1.0 - 1.0 / alpha;
        const double hi = 1.0 / alpha;
        if (rho < lo - kBoundaryTol || rho > hi + kBoundaryTol) {
            throw ParameterError("alpha in (1,2) requires rho in [1-1/alpha, 1/alpha]: got " +
                                 describe(alpha, rho));
        }
        rho = std::clamp(rho, lo, hi);
    } else if (rho == 0.0 || rho == 1.0) {
        throw ParameterError("rho in {0, 1} with alpha <= 1 is a subordinator case: got " +
                             describe(alpha, rho));
    }
    const double kappa = std::cos(kPi * alpha * (rho - 0.5));
    double beta = 0.0;
    if (alpha != 1.0) {
        beta = std::tan(kPi * alpha * (rho - 0.5)) / std::tan(kPi * alpha / 2.0);
        beta = std::clamp(beta, -1.0, 1.0);
    }
    return StableParams(alpha, rho, beta, kappa);
}

StableParams StableParams::dual() const { return validate_params(alpha_, 1.0 - rho_); }

DerivedExponents derived_exponents(const StableParams& p) {
    const double a = p.alpha();
    const double r = p.rho();
    DerivedExponents d{};
    d.gamma = r * a / (1.0 + a);
    d.chi = r * a / (1.0 + a * (1.0 - r));
    d.theta = r / (1.0 + a * (1.0 - r));
    d.delta = (1.0 + d.chi) / 2.0;
    d.eta = 1.0 / (1.0 + a * (1.0 - r));
    d.sigma = (a + 1.0) / 2.0;
    d.s_ar = std::sin(kPi * a * (r - 0.5)) / (a + 1.0);
    d.c_ar = std::cos(kPi * a * (r - 0.5)) / (a + 1.0);
    d.lower_tail = d.theta * a / (a + 1.0);
    return d;
}

std::string to_string(Axis axis) { return axis == Axis::vertical ? "vertical" : "horizontal"; }

HittingPlaceLaw::HittingPlaceLaw(const StableParams& params, Axis axis, double coordinate)
    : params_(params), axis_(axis), coordinate_(coordinate) {
    if (!(coordinate < 0.0) || !std::isfinite(coordinate)) {
        throw ParameterError(axis == Axis::vertical
                                 ? "vertical-axis start (0, y) requires y < 0"
                                 : "horizontal-axis start (x, 0) requires x < 0");
    }
}

double HittingPlaceLaw::pole() const { return 1.0 / (1.0 - derived_exponents(params_).gamma); }

std::complex<double> char_exponent_L(double lambda, const StableParams& p) {
    if (lambda == 0.0) return {0.0, 0.0};
    const double sgn = lambda > 0.0 ? 1.0 : -1.0;
    const double mag = std::pow(std::abs(lambda), p.alpha());
    const double phase = sgn * kPi * p.alpha() * (0.5 - p.rho());
    return -mag * std::complex<double>(std::cos(phase), std::sin(phase));
}

std::complex<double> char_exponent_X(double lambda, double t, double x, double y,
                                     const StableParams& p) {
    if (t < 0.0) throw ParameterError("char_exponent_X requires t >= 0");
    const double a = p.alpha();
    const std::complex<double> drift(0.0, lambda * (x + y * t));
    if (t == 0.0) return drift;
    return drift + (std::pow(t, a + 1.0) / (a + 1.0)) * char_exponent_L(lambda, p);
}

double cauchy_mu_density(double mu, double x) {
    if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("mu-Cauchy requires mu in (0, 1)");
    if (x < 0.0) return 0.0;
    return std::sin(kPi * mu) / (kPi * mu * (x * x + 2.0 * std::cos(kPi * mu) * x + 1.0));
}

double mellin_cauchy_mu(double mu, double s) {
    if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("mu-Cauchy requires mu in (0, 1)");
    if (!(std::abs(s) < 1.0)) throw ParameterError("E[C_mu^s] is infinite for |s| >= 1");
    return special::sin_ratio(mu, 1.0, s) / mu;
}

double vertical_mellin(double gamma, double y, double s) {
    const double pole = 1.0 / (1.0 - gamma);
    if (!(std::abs(s) < pole)) throw ParameterError("Mellin argument outside |s| < 1/(1-gamma)");
    if (s == 1.0) return 1.0;
    return std::pow(std::abs(y), s - 1.0) * special::sin_ratio(gamma, 1.0 - gamma, s);
}

double horizontal_mellin(double alpha, double gamma, double x, double s) {
    const double pole = 1.0 / (1.0 - gamma);
    if (!(std::abs(s) < pole)) throw ParameterError("Mellin argument outside |s| < 1/(1-gamma)");
    if (s == 1.0) return 1.0;
    const double a1 = alpha + 1.0;
    const double lead = std::pow(a1, (1.0 - s) / a1) * std::tgamma((alpha + 2.0) / a1) *
                        std::sin(kPi * gamma);
    // Gamma((1-s)/(a+1)) / Gamma(1-s) and 1/(Gamma(s/(a+1)) sin(pi s (1-gamma)))
    const double upper = special::gamma_ratio_near_pole(1.0 / a1, 1.0 - s);
    const double lower = special::rgamma_times_rsin(1.0 / a1, 1.0 - gamma, s);
    return lead * upper * lower * std::pow(std::abs(x), (s - 1.0) / a1);
}

double hitting_place_mellin(const HittingPlaceLaw& law, double s) {
    const auto d = derived_exponents(law.params());
    if (law.axis() == Axis::vertical) return vertical_mellin(d.gamma, law.coordinate(), s);
    return horizontal_mellin(law.params().alpha(), d.gamma, law.coordinate(), s);
}

double hitting_place_density_vertical(const HittingPlaceLaw& law, double z) {
    if (law.axis() != Axis::vertical) {
        throw UnsupportedCase("closed-form density is only available on the vertical axis");
    }
    if (z < 0.0) throw ParameterError("hitting place density requires z >= 0");
    const auto d = derived_exponents(law.params());
    const double scale = std::abs(law.coordinate());
    const double w = z / scale;
    const double c = std::pow(w, 1.0 + d.chi);
    const double norm = mellin_cauchy_mu(d.chi, 1.0 - d.gamma);
    return (1.0 + d.chi) * c * cauchy_mu_density(d.chi, c) / (norm * scale);
}

double mellin_positive_stable(double mu, double s) {
    if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("positive stable requires mu in (0, 1)");
    if (!(s < mu)) throw ParameterError("E[Z_mu^s] is infinite for s >= mu");
    return positive_stable_moment(mu, s);
}

double mellin_gamma_variable(double c, double q) {
    if (!(c > 0.0) || !(c + q > 0.0)) throw ParameterError("E[Gamma_c^q] requires c + q > 0");
    return std::tgamma(c + q) / std::tgamma(c);
}

double mellin_beta_variable(double a, double b, double q) {
    if (!(a > 0.0 && b > 0.0) || !(a + q > 0.0)) {
        throw ParameterError("E[B_{a,b}^q] requires a + q > 0");
    }
    return std::tgamma(a + q) * std::tgamma(a + b) / (std::tgamma(a) * std::tgamma(a + b + q));
}

std::string to_string(ProductForm form) {
    switch (form) {
        case ProductForm::cauchy: return "cauchy";
        case ProductForm::brownian: return "brownian";
        case ProductForm::below_one: return "alpha<1";
        case ProductForm::one_to_two: return "1<alpha<2";
        case ProductForm::unresolved: return "unresolved";
    }
    return "unknown";
}

ProductIdentity mellin_product_identity(const StableParams& p, double s) {
    const auto d = derived_exponents(p);
    const double a = p.alpha();
    const double a1 = a + 1.0;
    ProductIdentity out{ProductForm::unresolved, horizontal_mellin(a, d.gamma, -1.0, s), {}};

    if (a == 1.0) {
        out.form = ProductForm::cauchy;
        const double size_bias = mellin_cauchy_mu(d.delta, 1.0 - d.gamma);
        out.rhs = std::pow(2.0, (s - 1.0) / 2.0) * mellin_cauchy_mu(d.delta, (1.0 - d.gamma) * s) /
                  size_bias;
    } else if (a == 2.0) {
        out.form = ProductForm::brownian;
        const double q = (s - 1.0) / 3.0;
        out.rhs = std::pow(9.0, q) * mellin_gamma_variable(5.0 / 6.0, q) *
                  mellin_beta_variable(1.0 / 6.0, 1.0 / 6.0, -q);
    } else if (a < 1.0) {
        out.form = ProductForm::below_one;
        const double scale = 2.0 * std::pow(1.0 / a1, 1.0 / a1);
        const double quotient =
            positive_stable_moment(d.delta, s / 2.0) * positive_stable_moment(d.eta, -s / a1) /
            (positive_stable_moment(d.delta, 0.5) * positive_stable_moment(d.eta, -1.0 / a1));
        out.rhs = std::pow(scale, s - 1.0) * positive_stable_moment(d.sigma, (s - 1.0) / 2.0) *
                  quotient;
    } else if (d.gamma <= 1.0 / 3.0 + kBoundaryTol) {
        out.form = ProductForm::one_to_two;
        const double scale = 3.0 * std::pow(2.0, -2.0 / 3.0) * std::pow(1.0 / a1, 1.0 / a1);
        const double mu2 = std::min(1.0, 2.0 / (3.0 * (1.0 - d.gamma)));
        const double quotient =
            positive_stable_moment(mu2, 2.0 * s / 3.0) * positive_stable_moment(d.eta, -s / a1) /
            (positive_stable_moment(mu2, 2.0 / 3.0) * positive_stable_moment(d.eta, -1.0 / a1));
        out.rhs = std::pow(scale, s - 1.0) * positive_stable_moment(a1 / 3.0, (s - 1.0) / 3.0) *
                  mellin_beta_variable(1.0 / 6.0, 1.0 / 6.0, -(s - 1.0) / 3.0) * quotient;
    }
    return out;
}

double sample_positive_stable(double mu, Rng& rng) {
    if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("positive stable requires mu in (0, 1)");
    const double u = kPi * uniform_open(rng);
    const double e = standard_exponential(rng);
    const double head = std::sin(mu * u) / std::pow(std::sin(u), 1.0 / mu);
    const double tail = std::pow(std::sin((1.0 - mu) * u) / e, (1.0 - mu) / mu);
    return head * tail;
}

// ---------------------------------------------------------------------------
// SizeBiasedPowerCauchy

namespace {

constexpr double kTableStep = 0.005;
constexpr double kUpperLog = 40.0;

// 8-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 4> kGl8Nodes = {0.1834346424956498, 0.5255324099163290,
                                             0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGl8Weights = {0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};

}  // namespace

SizeBiasedPowerCauchy::SizeBiasedPowerCauchy(double mu, double power) : mu_(mu), power_(power) {
    if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("mu-Cauchy requires mu in (0, 1)");
    if (!(power > 0.0 && power < 1.0)) throw ParameterError("size-biased power must lie in (0, 1)");

    const double norm = mellin_cauchy_mu(mu, power);
    const double f0 = std::sin(kPi * mu) / (kPi * mu);
    lower_coef_ = f0 / ((power + 1.0) * norm);
    upper_coef_ = f0 / ((1.0 - power) * norm);

    u_lo_ = std::log(1e-17) / (power + 1.0);
    du_ = kTableStep;
    const auto cells = static_cast<std::size_t>(std::ceil((kUpperLog - u_lo_) / du_));
    const double u_hi = u_lo_ + static_cast<double>(cells) * du_;

    auto integrand = [&](double u) {
        const double c = std::exp(u);
        return std::exp(u * (power + 1.0)) * cauchy_mu_density(mu, c) / norm;
    };
    std::vector<double> mass(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        const double mid = u_lo_ + (static_cast<double>(k) + 0.5) * du_;
        const double half = 0.5 * du_;
        double acc = 0.0;
        for (std::size_t j = 0; j < kGl8Nodes.size(); ++j) {
            acc += kGl8Weights[j] * (integrand(mid - half * kGl8Nodes[j]) +
                                     integrand(mid + half * kGl8Nodes[j]));
        }
        mass[k] = acc * half;
    }

    lower_.assign(cells + 1, 0.0);
    upper_.assign(cells + 1, 0.0);
    lower_[0] = lower_coef_ * std::exp(u_lo_ * (power + 1.0));
    for (std::size_t k = 0; k < cells; ++k) lower_[k + 1] = lower_[k] + mass[k];
    upper_[cells] = upper_coef_ * std::exp(u_hi * (power - 1.0));
    for (std::size_t k = cells; k-- > 0;) upper_[k] = upper_[k + 1] + mass[k];

    // both arrays share the same total; normalize it to one
    const double total = lower_[cells] + upper_[cells];
    for (auto& v : lower_) v /= total;
    for (auto& v : upper_) v /= total;
    lower_coef_ /= total;
    upper_coef_ /= total;
}

double SizeBiasedPowerCauchy::cdf_c(double c) const {
    if (c <= 0.0) return 0.0;
    const double u = std::log(c);
    const std::size_t cells = lower_.size() - 1;
    const double pos = (u - u_lo_) / du_;
    if (pos <= 0.0) return lower_coef_ * std::pow(c, power_ + 1.0);
    if (pos >= static_cast<double>(cells)) return 1.0 - upper_coef_ * std::pow(c, power_ - 1.0);
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    if (lower_[k] < 0.5) return lower_[k] + frac * (lower_[k + 1] - lower_[k]);
    return 1.0 - (upper_[k] + frac * (upper_[k + 1] - upper_[k]));
}

double SizeBiasedPowerCauchy::quantile_c(double u) const {
    const std::size_t cells = lower_.size() - 1;
    if (u <= lower_.front()) return std::pow(u / lower_coef_, 1.0 / (power_ + 1.0));
    const double q = 1.0 - u;
    if (q <= upper_.back()) return std::pow(upper_coef_ / q, 1.0 / (1.0 - power_));
    std::size_t k;
    double frac;
    if (u < 0.5) {
        // lower_[k] <= u < lower_[k+1]
        auto it = std::upper_bound(lower_.begin(), lower_.end(), u);
        k = static_cast<std::size_t>(it - lower_.begin()) - 1;
        frac = (u - lower_[k]) / (lower_[k + 1] - lower_[k]);
    } else {
        // upper_[k] >= q > upper_[k+1]; upper_ is decreasing
        auto it = std::upper_bound(upper_.begin(), upper_.end(), q, std::greater<double>());
        k = static_cast<std::size_t>(it - upper_.begin()) - 1;
        k = std::min(k, cells - 1);
        frac = (upper_[k] - q) / (upper_[k] - upper_[k + 1]);
    }
    return std::exp(u_lo_ + (static_cast<double>(k) + frac) * du_);
}

double SizeBiasedPowerCauchy::cdf(double v) const {
    if (v <= 0.0) return 0.0;
    return cdf_c(std::pow(v, 1.0 / power_));
}

double SizeBiasedPowerCauchy::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw ParameterError("quantile level must lie in (0, 1)");
    return std::pow(quantile_c(u), power_);
}

// ---------------------------------------------------------------------------

HittingPlaceSampler::HittingPlaceSampler(const HittingPlaceLaw& law) : law_(law), scale_(1.0) {
    const auto d = derived_exponents(law.params());
    const double a = law.params().alpha();
    const double coord = std::abs(law.coordinate());
    if (law.axis() == Axis::vertical) {
        scale_ = coord;
        power_cauchy_.emplace(d.chi, 1.0 - d.gamma);
    } else if (a == 1.0) {
        scale_ = std::sqrt(2.0 * coord);
        power_cauchy_.emplace(d.delta, 1.0 - d.gamma);
    } else if (a == 2.0) {
        scale_ = std::cbrt(9.0 * coord);
    } else {
        throw UnsupportedCase(
            "no closed-form sampler for the horizontal axis with alpha not in {1, 2}");
    }
}

double HittingPlaceSampler::operator()(Rng& rng) const {
    if (power_cauchy_) return scale_ * (*power_cauchy_)(rng);
    // |9x|^{1/3} (Gamma_{5/6} / B_{1/6,1/6})^{1/3}
    std::gamma_distribution<double> g56(5.0 / 6.0, 1.0);
    std::gamma_distribution<double> g16(1.0 / 6.0, 1.0);
    const double g = g56(rng);
    const double b1 = g16(rng);
    const double b2 = g16(rng);
    const double beta = b1 / (b1 + b2);
    return scale_ * std::cbrt(g / beta);
}

double sample_hitting_place_closed_form(const StableParams& p, Axis axis, double coordinate,
                                        Rng& rng) {
    HittingPlaceSampler sampler(HittingPlaceLaw(p, axis, coordinate));
    return sampler(rng);
}

}  // namespace persist
