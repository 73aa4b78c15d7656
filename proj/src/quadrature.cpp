#include "persist/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "persist/error.hpp"
#include "persist/integrate.hpp"

namespace persist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-45) ~ 2.9e-20: damped integrands are cut there
constexpr double kDampingCut = 45.0;
// at most this many half periods are summed directly before acceleration
constexpr int kDirectSegments = 400;
constexpr int kMinAccelerated = 24;
constexpr double kSegmentRel = 1e-13;

double trig(TrigKind kind, double x) { return kind == TrigKind::sin ? std::sin(x) : std::cos(x); }

// Sums half-period pieces [start + k seg, start + (k+1) seg] of f, beginning
// from `initial` (the integral over [0, start]). Stops exactly at `stop` if it
// is finite and reached, otherwise when the accelerated sums settle.
template <class F>
double sum_segments(F& f, double initial, double start, double seg, double stop, double abs_tol,
                    int max_segments, const char* what) {
    integrate::AlternatingAccelerator acc;
    acc.push(initial);
    int settled = 0;
    for (int k = 0; k < max_segments; ++k) {
        const double a = start + k * seg;
        double b = start + (k + 1) * seg;
        const bool last = b >= stop;
        if (last) b = stop;
        const auto piece = integrate::adaptive(f, a, b, 1e-3 * abs_tol, kSegmentRel, 400);
        acc.push(piece.value);
        if (last) return acc.partial_sum();
        if (static_cast<int>(acc.terms()) >= kMinAccelerated) {
            settled = acc.last_change() <= abs_tol ? settled + 1 : 0;
            if (settled >= 2) return acc.estimate();
        }
    }
    std::ostringstream os;
    os << what << ": accelerated partial sums did not settle after " << max_segments
       << " half periods (last change " << acc.last_change() << ", target " << abs_tol << ")";
    throw AccuracyError(os.str());
}

// int_0^inf r^{nu-1} e^{-r^alpha} trig(a r + b r^alpha + c) dr
double damped_normalized(double nu, double alpha, double a, double b, double c, TrigKind kind,
                         double rel_tol, int max_segments) {
    auto g = [&](double r) {
        const double ra = std::pow(r, alpha);
        return std::exp(-ra) * trig(kind, a * r + b * ra + c);
    };
    auto f = [&](double r) { return std::pow(r, nu - 1.0) * g(r); };

    const double r_max = std::pow(kDampingCut, 1.0 / alpha);
    const double seg = a != 0.0 ? kPi / std::abs(a) : kInf;
    const double first_end = std::min(seg, r_max);

    const auto head = integrate::power_singular(g, nu, first_end, 0.0, kSegmentRel, 2000);
    double scale = std::abs(head.value);
    if (!(scale > 0.0)) scale = std::numeric_limits<double>::min();
    const double abs_tol = rel_tol * scale;
    if (first_end >= r_max) return head.value;

    if (seg * kDirectSegments >= r_max) {
        return sum_segments(f, head.value, first_end, seg, r_max, abs_tol, kDirectSegments + 2,
                            "damped oscillatory integral");
    }
    return sum_segments(f, head.value, first_end, seg, r_max, abs_tol, max_segments,
                        "damped oscillatory integral");
}

}  // namespace

double oscillatory_integral(const OscIntegralSpec& spec, double rel_tol, int max_segments) {
    if (spec.damping < 0.0) throw ParameterError("damping rate must be nonnegative");
    if (spec.damping == 0.0) {
        if (spec.power != 0.0 || spec.phase != 0.0) {
            throw ParameterError("undamped oscillatory integrals must be pure Fresnel type");
        }
        return fresnel_power_integral(spec.nu, spec.linear, spec.kind, rel_tol);
    }
    if (!(spec.nu > 0.0)) throw ParameterError("damped oscillatory integral requires nu > 0");
    if (!(spec.alpha > 0.0)) throw ParameterError("damping power must be positive");
    // l = r D^{-1/alpha}
    const double shrink = std::pow(spec.damping, -1.0 / spec.alpha);
    const double j = damped_normalized(spec.nu, spec.alpha, spec.linear * shrink,
                                       spec.power / spec.damping, spec.phase, spec.kind, rel_tol,
                                       max_segments);
    return std::pow(shrink, spec.nu) * j;
}

double fresnel_power_closed_form(double nu, double u, TrigKind kind) {
    if (kind == TrigKind::cos) {
        if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("cos Fresnel integral requires nu in (0,1)");
        if (u == 0.0) throw ParameterError("cos Fresnel integral diverges at u = 0");
        return std::tgamma(nu) * std::cos(kPi * nu / 2.0) * std::pow(std::abs(u), -nu);
    }
    if (!(std::abs(nu) < 1.0)) throw ParameterError("sin Fresnel integral requires |nu| < 1");
    if (u == 0.0) return 0.0;
    const double sgn = u > 0.0 ? 1.0 : -1.0;
    // Gamma(nu) sin(pi nu / 2) -> pi/2 as nu -> 0
    const double coef = nu == 0.0 ? kPi / 2.0 : std::tgamma(nu) * std::sin(kPi * nu / 2.0);
    return coef * sgn * std::pow(std::abs(u), -nu);
}

double fresnel_power_integral(double nu, double u, TrigKind kind, double abs_tol) {
    const double w = std::abs(u);
    const double seg = kPi / std::max(w, std::numeric_limits<double>::min());
    if (kind == TrigKind::cos) {
        if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("cos Fresnel integral requires nu in (0,1)");
        if (u == 0.0) throw ParameterError("cos Fresnel integral diverges at u = 0");
        auto g = [&](double l) { return std::cos(l * w); };
        auto f = [&](double l) { return std::pow(l, nu - 1.0) * std::cos(l * w); };
        const double first = seg / 2.0;
        const auto head = integrate::power_singular(g, nu, first, 1e-3 * abs_tol, kSegmentRel);
        return sum_segments(f, head.value, first, seg, kInf, abs_tol, 200000,
                            "generalized Fresnel integral");
    }
    if (!(std::abs(nu) < 1.0)) throw ParameterError("sin Fresnel integral requires |nu| < 1");
    if (u == 0.0) return 0.0;
    // l^{nu-1} sin(l w) = l^{(nu+1)-1} * sin(l w)/l
    auto g = [&](double l) { return l == 0.0 ? w : std::sin(l * w) / l; };
    auto f = [&](double l) { return std::pow(l, nu - 1.0) * std::sin(l * w); };
    const auto head = integrate::power_singular(g, nu + 1.0, seg, 1e-3 * abs_tol, kSegmentRel);
    const double value = sum_segments(f, head.value, seg, seg, kInf, abs_tol, 200000,
                                      "generalized Fresnel integral");
    return u > 0.0 ? value : -value;
}

double mellin_xplus(double x, double y, double t, double nu, const StableParams& p,
                    double rel_tol) {
    if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("mellin_xplus requires nu in (0, 1)");
    if (!(t > 0.0)) throw ParameterError("mellin_xplus requires t > 0");
    const auto d = derived_exponents(p);
    const double a = p.alpha();
    const double growth = std::pow(t, a + 1.0);
    OscIntegralSpec spec;
    spec.nu = nu;
    spec.alpha = a;
    spec.damping = d.c_ar * growth;
    spec.linear = x + y * t;
    spec.power = d.s_ar * growth;
    spec.phase = kPi * nu / 2.0;
    spec.kind = TrigKind::sin;
    return std::tgamma(1.0 - nu) / kPi * oscillatory_integral(spec, rel_tol * 1e-2);
}

std::string to_string(AxisCase c) {
    switch (c) {
        case AxisCase::y_pos: return "y_pos";
        case AxisCase::y_neg: return "y_neg";
        case AxisCase::x_neg: return "x_neg";
    }
    return "unknown";
}

double AxisComparison::relative_error() const {
    return std::abs(numeric - closed_form) / std::abs(closed_form);
}

namespace {

void check_axis_args(AxisCase c, double coord, double nu, const StableParams& p) {
    const double a = p.alpha();
    if (!(nu > a / (a + 1.0) && nu < 1.0)) {
        throw ParameterError("integrated Mellin transform requires nu in (alpha/(alpha+1), 1)");
    }
    if (c == AxisCase::y_pos ? !(coord > 0.0) : !(coord < 0.0)) {
        throw ParameterError("coordinate sign does not match the axis case");
    }
}

}  // namespace

double integrated_mellin_closed_form(AxisCase c, double coord, double nu, const StableParams& p) {
    check_axis_args(c, coord, nu, p);
    const auto d = derived_exponents(p);
    const double a = p.alpha();
    const double s = (1.0 - nu) * (a + 1.0);
    const double g1nu = std::tgamma(1.0 - nu);
    switch (c) {
        case AxisCase::y_pos:
            return std::pow(a + 1.0, 1.0 - nu) * std::tgamma(1.0 - s) *
                   std::sin(kPi * s * (1.0 - d.gamma)) * g1nu * g1nu / kPi *
                   std::pow(coord, s - 1.0);
        case AxisCase::y_neg:
            return std::pow(a + 1.0, 1.0 - nu) * std::tgamma(1.0 - s) *
                   std::sin(kPi * d.gamma * s) * g1nu * g1nu / kPi *
                   std::pow(std::abs(coord), s - 1.0);
        case AxisCase::x_neg:
            return std::pow(a + 1.0, -a / (a + 1.0)) * std::tgamma((1.0 - s) / (a + 1.0)) *
                   std::sin(kPi * d.gamma) * std::tgamma(1.0 / (a + 1.0)) * g1nu / kPi *
                   std::pow(std::abs(coord), (s - 1.0) / (a + 1.0));
    }
    return 0.0;
}

AxisComparison integrated_mellin_axis(AxisCase c, double coord, double nu, const StableParams& p,
                                      double rel_tol) {
    const double closed = integrated_mellin_closed_form(c, coord, nu, p);
    const auto d = derived_exponents(p);
    const double a = p.alpha();
    const double decay = nu * (1.0 + 1.0 / a);  // E(t) ~ t^{-decay} as t -> inf
    const double x = c == AxisCase::x_neg ? coord : 0.0;
    const double y = c == AxisCase::x_neg ? 0.0 : coord;
    const double lin = std::abs(coord) * std::pow(d.c_ar, -1.0 / a);

    // Integration limits: the scaled linear phase coefficient is ~1e-10 at
    // t_hi (pure power decay beyond) and large at t_lo (pure power onset).
    double t_lo = 0.0;
    double t_hi = 0.0;
    double lo_exponent = 0.0;  // E(t) ~ t^{lo_exponent} as t -> 0
    if (c == AxisCase::x_neg) {
        t_lo = std::pow(lin / 1e6, a / (a + 1.0));
        t_hi = std::pow(lin / 1e-10, a / (a + 1.0));
        lo_exponent = a + 1.0;
    } else {
        t_lo = std::pow(lin / std::pow(1e11, 1.0 / a), a);
        t_hi = std::pow(lin / 1e-10, a);
        lo_exponent = c == AxisCase::y_pos ? -nu : 1.0 - nu;
    }

    auto integrand = [&](double v) {
        const double t = std::exp(v);
        return t * mellin_xplus(x, y, t, nu, p, 1e-2 * rel_tol);
    };
    const double v_lo = std::log(t_lo);
    const double v_hi = std::log(t_hi);
    const auto body = integrate::adaptive(integrand, v_lo, v_hi, 0.0, rel_tol, 4000);
    if (!body.converged) {
        std::ostringstream os;
        os << "time integral for case " << to_string(c) << " did not converge (error "
           << body.error << " on " << body.value << ")";
        throw AccuracyError(os.str());
    }
    const double head = integrand(v_lo) / (lo_exponent + 1.0);
    const double tail = integrand(v_hi) / (decay - 1.0);
    return {closed, head + body.value + tail};
}

}  // namespace persist
