#pragma once

// Gamma-function helpers shared by the closed forms and the quadrature
// oracles. Gamma values come from std::tgamma / std::lgamma.

#include <cmath>
#include <numbers>

namespace persist::special {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Removable singularities are resolved analytically when the argument is
// within this distance of the singular point.
inline constexpr double kSingularWindow = 1e-9;

inline double gamma(double x) { return std::tgamma(x); }

// 1/Gamma(x), entire; exact zero at the poles of Gamma.
inline double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

// Gamma(a*e) / Gamma(e) for e near zero, a > 0. Uses the two-term Laurent
// expansion Gamma(z) = 1/z - gamma_E + O(z) inside the singular window.
inline double gamma_ratio_near_pole(double a, double e) {
    if (std::abs(e) < kSingularWindow) {
        return (1.0 / a) * (1.0 + e * kEulerGamma * (1.0 - a));
    }
    return std::tgamma(a * e) / std::tgamma(e);
}

// 1 / (Gamma(b*s) * sin(pi*c*s)) near s = 0, b, c > 0.
inline double rgamma_times_rsin(double b, double c, double s) {
    if (std::abs(s) < kSingularWindow) {
        // Gamma(bs) sin(pi c s) = pi c / b - pi c gamma_E s + O(s^2)
        const double lead = std::numbers::pi * c / b;
        return 1.0 / (lead - std::numbers::pi * c * kEulerGamma * s);
    }
    return rgamma(b * s) / std::sin(std::numbers::pi * c * s);
}

// sin(pi*a*s) / sin(pi*b*s), continuous at s = 0 (even in s).
inline double sin_ratio(double a, double b, double s) {
    if (std::abs(s) < kSingularWindow) {
        const double ps = std::numbers::pi * s;
        return (a / b) * (1.0 - (a * a - b * b) * ps * ps / 6.0);
    }
    return std::sin(std::numbers::pi * a * s) / std::sin(std::numbers::pi * b * s);
}

}  // namespace persist::special
