#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "shapesphere/errors.hpp"

namespace shapesphere {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre5 {
    static constexpr std::array<double, 5> nodes = {
        -0.9061798459386639928, -0.5384693101056830910, 0.0, 0.5384693101056830910,
        0.9061798459386639928};
    static constexpr std::array<double, 5> weights = {
        0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
        0.4786286704993664680, 0.2369268850561890875};
};

// Composite 5-point Gauss-Legendre with n equal segments.
template <class F>
double integrate_gl5(const F& f, double a, double b, int segments) {
    const double h = (b - a) / segments;
    double acc = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double mid = a + (s + 0.5) * h;
        double part = 0.0;
        for (int q = 0; q < 5; ++q)
            part += GaussLegendre5::weights[q] * f(mid + 0.5 * h * GaussLegendre5::nodes[q]);
        acc += part * 0.5 * h;
    }
    return acc;
}

// Segment-doubling GL5 until two refinements agree to tol.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol = 1e-10,
                          int initial_segments = 8, int max_segments = 1 << 20) {
    double prev = integrate_gl5(f, a, b, initial_segments);
    for (int n = initial_segments * 2; n <= max_segments; n *= 2) {
        const double cur = integrate_gl5(f, a, b, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// Brent root bracketing solver.
template <class F>
double brent_root(const F& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0) throw NumericalError("brent_root: endpoints do not bracket a root");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a, s = b;
    bool mflag = true;
    for (int it = 0; it < max_iter; ++it) {
        if (fb == 0.0 || std::abs(b - a) < tol) return b;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double lo = (3 * a + b) / 4;
        const bool cond = !((s > std::min(lo, b) && s < std::max(lo, b))) ||
                          (mflag && std::abs(s - b) >= std::abs(b - c) / 2) ||
                          (!mflag && std::abs(s - b) >= std::abs(c - d) / 2);
        if (cond) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

// Golden-section minimizer for unimodal scalar functions.
template <class F>
double golden_minimize(const F& f, double a, double b, double tol = 1e-12) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

// Kahan-compensated accumulator.
class CompensatedSum {
  public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0, c_ = 0.0;
};

} // namespace shapesphere
