#pragma once

// General-purpose quadrature building blocks: a globally adaptive 7/15-point
// Gauss-Kronrod integrator, a power-singularity substitution for integrals
// starting at zero, and iterated averaging for alternating partial sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <queue>
#include <vector>

namespace persist::integrate {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7)
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
Interval gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const double pair = f(c - dx) + f(c + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod on a finite interval. Bisects the interval with the
/// largest error estimate until the summed estimate falls below
/// max(abs_tol, rel_tol * |value|).
template <class F>
Result adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                int max_intervals = 2000) {
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Interval> heap;
    auto first = detail::gk15(f, a, b);
    out.evaluations = 15;
    double total = first.value;
    double err = first.error;
    heap.push(first);
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // re-sum to shed accumulated cancellation in the running totals
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = err;
    out.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

/// Integral of x^{p-1} g(x) over [0, b] with p > 0, computed after the
/// substitution w = x^p, which removes the endpoint singularity:
/// (1/p) * int_0^{b^p} g(w^{1/p}) dw.
template <class G>
Result power_singular(G&& g, double p, double b, double abs_tol, double rel_tol,
                      int max_intervals = 2000) {
    const double inv_p = 1.0 / p;
    auto h = [&](double w) { return g(std::pow(w, inv_p)); };
    Result r = adaptive(h, 0.0, std::pow(b, p), abs_tol * p, rel_tol, max_intervals);
    r.value *= inv_p;
    r.error *= inv_p;
    return r;
}

/// Limit of an alternating-type series from its partial sums, by iterated
/// averaging of the most recent `width` partial sums (Euler-Knopp means).
class AlternatingAccelerator {
public:
    explicit AlternatingAccelerator(std::size_t width = 20) : width_(width) {}

    void push(double term) {
        running_ += term;
        partial_.push_back(running_);
        if (partial_.size() > width_ + 1) partial_.pop_front();
        previous_ = current_;
        current_ = average();
        ++terms_;
    }

    std::size_t terms() const { return terms_; }
    double estimate() const { return current_; }
    double last_change() const {
        return terms_ < 2 ? std::numeric_limits<double>::infinity() : std::abs(current_ - previous_);
    }
    double partial_sum() const { return running_; }

private:
    double average() const {
        std::vector<double> level(partial_.begin(), partial_.end());
        for (std::size_t n = level.size(); n > 1; --n) {
            for (std::size_t i = 0; i + 1 < n; ++i) level[i] = 0.5 * (level[i] + level[i + 1]);
        }
        return level.front();
    }

    std::size_t width_;
    std::deque<double> partial_;
    double running_ = 0.0;
    double current_ = 0.0;
    double previous_ = 0.0;
    std::size_t terms_ = 0;
};

}  // namespace persist::integrate
