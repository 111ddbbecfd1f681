#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "shapesphere/errors.hpp"

namespace shapesphere {

// Dense truncated Taylor series sum c[k] x^k, all operations truncated at a
// shared order. Used by the singular-IVP initializers.
class Taylor {
  public:
    Taylor() = default;
    explicit Taylor(int order) : c_(static_cast<size_t>(order) + 1, 0.0) {}
    Taylor(int order, double c0) : Taylor(order) { c_[0] = c0; }

    static Taylor variable(int order, double scale = 1.0) {
        Taylor t(order);
        if (order >= 1) t.c_[1] = scale;
        return t;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](int k) const { return (k >= 0 && k <= order()) ? c_[k] : 0.0; }
    double& at(int k) { return c_[k]; }
    const std::vector<double>& coeffs() const { return c_; }

    double eval(double x) const {
        double acc = 0.0;
        for (int k = order(); k >= 0; --k) acc = acc * x + c_[k];
        return acc;
    }

    Taylor operator+(const Taylor& o) const {
        Taylor r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] + o[k];
        return r;
    }
    Taylor operator-(const Taylor& o) const {
        Taylor r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] - o[k];
        return r;
    }
    Taylor operator-() const {
        Taylor r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = -c_[k];
        return r;
    }
    Taylor operator*(double s) const {
        Taylor r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] * s;
        return r;
    }
    Taylor operator+(double s) const {
        Taylor r = *this;
        r.c_[0] += s;
        return r;
    }
    Taylor operator-(double s) const { return *this + (-s); }

    Taylor operator*(const Taylor& o) const {
        Taylor r(order());
        for (int k = 0; k <= order(); ++k) {
            double acc = 0.0;
            for (int j = 0; j <= k; ++j) acc += c_[j] * o[k - j];
            r.c_[k] = acc;
        }
        return r;
    }

    // 1 / this, requires nonzero constant term.
    Taylor inverse() const {
        if (c_[0] == 0.0) throw NumericalError("Taylor::inverse: zero constant term");
        Taylor r(order());
        r.c_[0] = 1.0 / c_[0];
        for (int k = 1; k <= order(); ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }
    Taylor operator/(const Taylor& o) const { return *this * o.inverse(); }

    // this^a for positive constant term (uses f g' = a f' g).
    Taylor pow(double a) const {
        if (!(c_[0] > 0.0)) throw NumericalError("Taylor::pow: nonpositive constant term");
        Taylor g(order());
        g.c_[0] = std::pow(c_[0], a);
        for (int k = 1; k <= order(); ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j)
                acc += (a * j - (k - j)) * c_[j] * g.c_[k - j];
            g.c_[k] = acc / (k * c_[0]);
        }
        return g;
    }
    Taylor sqrt() const { return pow(0.5); }

    // d/dx, keeping the shared order (top coefficient set to 0).
    Taylor derivative() const {
        Taylor r(order());
        for (int k = 1; k <= order(); ++k) r.c_[k - 1] = k * c_[k];
        return r;
    }

    // Antiderivative with zero constant term.
    Taylor antiderivative() const {
        Taylor r(order());
        for (int k = 1; k <= order(); ++k) r.c_[k] = c_[k - 1] / k;
        return r;
    }

    // sin/cos of a series with zero constant term, computed jointly.
    static std::pair<Taylor, Taylor> sincos0(const Taylor& g) {
        if (g[0] != 0.0) throw NumericalError("Taylor::sincos0: nonzero constant term");
        const int n = g.order();
        Taylor s(n), c(n);
        s.c_[0] = 0.0;
        c.c_[0] = 1.0;
        for (int k = 1; k <= n; ++k) {
            double sa = 0.0, ca = 0.0;
            for (int j = 1; j <= k; ++j) {
                sa += j * g[j] * c.c_[k - j];
                ca += j * g[j] * s.c_[k - j];
            }
            s.c_[k] = sa / k;
            c.c_[k] = -ca / k;
        }
        return {s, c};
    }

    // sin/cos of phase0 + g with g(0) = 0.
    static std::pair<Taylor, Taylor> sincos(double phase0, const Taylor& g) {
        auto [s, c] = sincos0(g);
        const double s0 = std::sin(phase0), c0 = std::cos(phase0);
        return {s * c0 + c * s0, c * c0 - s * s0};
    }

    // Compose this(inner) where inner has zero constant term (Horner in series).
    Taylor compose(const Taylor& inner) const {
        if (inner[0] != 0.0) throw NumericalError("Taylor::compose: inner constant term != 0");
        const int n = order();
        Taylor acc(n, c_[n]);
        for (int k = n - 1; k >= 0; --k) acc = acc * inner + c_[k];
        return acc;
    }

    // Functional inverse of a series with c0 = 0, c1 = 1: returns g with
    // this(g(x)) = x through the shared order.
    Taylor revert() const {
        if (c_[0] != 0.0 || std::abs(c_[1] - 1.0) > 1e-13)
            throw NumericalError("Taylor::revert: need f = x + O(x^2)");
        const int n = order();
        Taylor g = variable(n);
        for (int k = 2; k <= n; ++k) {
            Taylor comp = compose(g);
            g.c_[k] -= comp[k]; // composition is triangular: residual at order k is linear
        }
        return g;
    }

  private:
    std::vector<double> c_;
};

inline Taylor operator*(double s, const Taylor& t) { return t * s; }
inline Taylor operator+(double s, const Taylor& t) { return t + s; }
inline Taylor operator-(double s, const Taylor& t) { return (-t) + s; }

} // namespace shapesphere
