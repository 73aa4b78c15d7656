#pragma once

// Parameter algebra and closed-form laws for the integral X of a strictly
// alpha-stable Levy process L, normalized by
//
//     log E[exp(i lambda L_1)] = -(i lambda)^alpha exp(-i pi alpha rho sgn(lambda)),
//
// and for the hitting place L_{T_0}, T_0 = inf{t > 0 : X_t = 0}, when (X, L)
// starts on a coordinate axis.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "persist/random.hpp"

namespace persist {

/// Self-similarity index alpha and positivity parameter rho = P[L_1 >= 0].
///
/// Only constructible through validate_params(), so every instance lies in the
/// admissible set with the subordinator cases removed.
class StableParams {
public:
    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    /// Skewness from Zolotarev's relation; 0 for alpha in {1, 2}.
    double beta() const { return beta_; }
    /// Scale constant cos(pi alpha (rho - 1/2)) of the classical form.
    double kappa() const { return kappa_; }

    /// Parameters of the dual process -L (rho -> 1 - rho).
    StableParams dual() const;

    bool operator==(const StableParams&) const = default;

private:
    friend StableParams validate_params(double alpha, double rho);
    StableParams(double alpha, double rho, double beta, double kappa)
        : alpha_(alpha), rho_(rho), beta_(beta), kappa_(kappa) {}

    double alpha_;
    double rho_;
    double beta_;
    double kappa_;
};

/// Checks admissibility and derives beta and kappa. Throws ParameterError
/// naming the violated constraint.
StableParams validate_params(double alpha, double rho);

struct DerivedExponents {
    double gamma;       // rho alpha / (1 + alpha)
    double chi;         // rho alpha / (1 + alpha (1 - rho)) = alpha theta
    double theta;       // persistence exponent rho / (1 + alpha (1 - rho))
    double delta;       // (1 + chi) / 2
    double eta;         // 1 / (1 + alpha (1 - rho))
    double sigma;       // (alpha + 1) / 2
    double s_ar;        // sin(pi alpha (rho - 1/2)) / (alpha + 1)
    double c_ar;        // cos(pi alpha (rho - 1/2)) / (alpha + 1)
    double lower_tail;  // theta alpha / (alpha + 1), small-ball exponent of sup X on [0, 1]
};

DerivedExponents derived_exponents(const StableParams& p);

enum class Axis {
    vertical,    // start (0, y), y < 0
    horizontal,  // start (x, 0), x < 0
};

std::string to_string(Axis axis);

/// Law of L_{T_0} for a start on a coordinate axis.
class HittingPlaceLaw {
public:
    /// `coordinate` is the nonzero coordinate of the start; it must be < 0.
    HittingPlaceLaw(const StableParams& params, Axis axis, double coordinate);

    const StableParams& params() const { return params_; }
    Axis axis() const { return axis_; }
    double coordinate() const { return coordinate_; }
    /// Strip of existence of the Mellin transform: |s| < pole().
    double pole() const;

private:
    StableParams params_;
    Axis axis_;
    double coordinate_;
};

/// Psi(lambda) of L_1.
std::complex<double> char_exponent_L(double lambda, const StableParams& p);

/// log E_{(x,y)}[exp(i lambda X_t)].
std::complex<double> char_exponent_X(double lambda, double t, double x, double y,
                                     const StableParams& p);

/// Density of the mu-Cauchy variable, sin(pi mu) / (pi mu (x^2 + 2 cos(pi mu) x + 1)).
double cauchy_mu_density(double mu, double x);

/// E[C_mu^s] = sin(pi mu s) / (mu sin(pi s)), |s| < 1.
double mellin_cauchy_mu(double mu, double s);

/// E[L_{T_0}^{s-1}] for the given law, |s| < law.pole().
double hitting_place_mellin(const HittingPlaceLaw& law, double s);

/// Raw axis formulas in terms of (alpha, gamma). They are exposed so callers
/// can evaluate deliberately perturbed laws.
double vertical_mellin(double gamma, double y, double s);
double horizontal_mellin(double alpha, double gamma, double x, double s);

/// Density of L_{T_0} under P_{(0,y)}: |y| (C_chi^{1-gamma})^{(1)}.
double hitting_place_density_vertical(const HittingPlaceLaw& law, double z);

/// E[Z_mu^s] = Gamma(1 - s/mu) / Gamma(1 - s) for the standard positive
/// mu-stable variable, s < mu.
double mellin_positive_stable(double mu, double s);

/// Mellin transforms of the Gamma and Beta variables.
double mellin_gamma_variable(double c, double q);             // E[Gamma_c^q]
double mellin_beta_variable(double a, double b, double q);    // E[B_{a,b}^q]

enum class ProductForm {
    cauchy,                 // alpha = 1: sqrt(2|x|) (C_delta^{1-gamma})^{(1)}
    brownian,               // alpha = 2: |9x|^{1/3} (Gamma_{5/6} / B_{1/6,1/6})^{1/3}
    below_one,              // alpha < 1: positive-stable product/quotient
    one_to_two,             // 1 < alpha < 2, gamma <= 1/3
    unresolved,             // 1 < alpha < 2, gamma > 1/3: no product form known
};

std::string to_string(ProductForm form);

struct ProductIdentity {
    ProductForm form;
    double lhs;                 // hitting_place_mellin, horizontal axis, x = -1
    std::optional<double> rhs;  // Mellin transform of the product representation
};

/// Compares the horizontal-axis Mellin transform (x = -1) with the Mellin
/// transform of the matching identity-in-law representation.
ProductIdentity mellin_product_identity(const StableParams& p, double s);

/// One draw of the standard positive mu-stable variable (Kanter's
/// representation), E[exp(-l Z)] = exp(-l^mu).
double sample_positive_stable(double mu, Rng& rng);

/// Law of (C_mu^power)^{(1)}, the order-one size bias of a power of the
/// mu-Cauchy variable, sampled by inverse CDF on a log-spaced table with
/// exact power-law tail completion.
class SizeBiasedPowerCauchy {
public:
    SizeBiasedPowerCauchy(double mu, double power);

    double cdf(double v) const;
    double quantile(double u) const;
    double operator()(Rng& rng) const { return quantile(uniform_open(rng)); }

    double mu() const { return mu_; }
    double power() const { return power_; }

private:
    // table over u = log c, c the underlying Cauchy variable
    double cdf_c(double c) const;
    double quantile_c(double u) const;

    double mu_;
    double power_;
    double u_lo_;
    double du_;
    std::vector<double> lower_;  // P[C^(power) <= exp(u_k)]
    std::vector<double> upper_;  // P[C^(power) >  exp(u_k)]
    double lower_coef_;          // P[. <= c] ~ lower_coef c^{power+1}   (c -> 0)
    double upper_coef_;          // P[. >  c] ~ upper_coef c^{power-1}   (c -> inf)
};

/// Closed-form sampler for L_{T_0}. Supports the vertical axis for every
/// admissible pair and the horizontal axis for alpha in {1, 2}; other cases
/// throw UnsupportedCase (they are checked at Mellin level only).
class HittingPlaceSampler {
public:
    explicit HittingPlaceSampler(const HittingPlaceLaw& law);

    double operator()(Rng& rng) const;
    const HittingPlaceLaw& law() const { return law_; }

private:
    HittingPlaceLaw law_;
    double scale_;
    std::optional<SizeBiasedPowerCauchy> power_cauchy_;
};

/// One draw; builds the sampler table on every call, so prefer
/// HittingPlaceSampler for repeated sampling.
double sample_hitting_place_closed_form(const StableParams& p, Axis axis, double coordinate,
                                        Rng& rng);

}  // namespace persist
