#pragma once

// Improper oscillatory integrals behind the Mellin transforms of X_t^+ and
// their time integrals.
//
// Strategy: split the half-line at consecutive zeros of the linear phase,
// integrate each half period with adaptive Gauss-Kronrod, and pass the
// alternating partial sums through iterated averaging until two successive
// accelerated values agree. Damped integrands are truncated where the damping
// factor drops below 1e-19 of its peak.

#include "persist/analytic.hpp"

namespace persist {

enum class TrigKind { cos, sin };

/// int_0^inf l^{nu-1} e^{-damping l^alpha} trig(linear l + power l^alpha + phase) dl.
///
/// damping == 0 is the undamped generalized Fresnel integral; it then requires
/// power == 0, nu in (0, 1) for cos (and linear != 0) and |nu| < 1 for sin.
struct OscIntegralSpec {
    double nu = 0.5;
    double alpha = 1.0;
    double damping = 0.0;
    double linear = 0.0;
    double power = 0.0;
    double phase = 0.0;
    TrigKind kind = TrigKind::sin;
};

struct OscTolerance {
    double fresnel_abs = 1e-10;  // absolute target of the Fresnel oracles
    double xplus_rel = 1e-8;     // relative target of mellin_xplus
    int max_segments = 200000;
};

/// Numeric evaluation of an OscIntegralSpec to relative accuracy `rel_tol`
/// (measured against the first half-period, which sets the scale).
/// Throws AccuracyError if the accelerated sums do not settle.
double oscillatory_integral(const OscIntegralSpec& spec, double rel_tol = 1e-10,
                            int max_segments = 200000);

/// int_0^inf l^{nu-1} trig(l u) dl by segmentation and acceleration.
double fresnel_power_integral(double nu, double u, TrigKind kind, double abs_tol = 1e-10);

/// Gamma(nu) cos(pi nu/2) |u|^{-nu}   or   Gamma(nu) sin(pi nu/2) sgn(u) |u|^{-nu}.
double fresnel_power_closed_form(double nu, double u, TrigKind kind);

/// E_{(x,y)}[(X_t^+)^{-nu}], nu in (0, 1), t > 0, via the damped oscillatory
/// representation of the Fourier transform of X_t.
double mellin_xplus(double x, double y, double t, double nu, const StableParams& p,
                    double rel_tol = 1e-8);

enum class AxisCase {
    y_pos,  // start (0, y), y > 0
    y_neg,  // start (0, y), y < 0
    x_neg,  // start (x, 0), x < 0
};

std::string to_string(AxisCase c);

struct AxisComparison {
    double closed_form;
    double numeric;
    double relative_error() const;
};

/// int_0^inf E_{(start)}[(X_t^+)^{-nu}] dt for nu in (alpha/(alpha+1), 1):
/// the Gamma/sine closed form and an independent numeric time integral of
/// mellin_xplus on a logarithmic grid with power-law end corrections.
AxisComparison integrated_mellin_axis(AxisCase c, double coord, double nu, const StableParams& p,
                                      double rel_tol = 1e-9);

double integrated_mellin_closed_form(AxisCase c, double coord, double nu, const StableParams& p);

}  // namespace persist
