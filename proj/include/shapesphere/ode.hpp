#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "shapesphere/errors.hpp"

namespace shapesphere {

namespace detail {
template <std::size_t N>
using StateN = std::array<double, N>;

template <std::size_t N>
inline StateN<N> axpy(const StateN<N>& y, double h, const StateN<N>& d) {
    StateN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * d[i];
    return r;
}
} // namespace detail

// Classical fixed-step RK4.
template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const Rhs& f, double t, const std::array<double, N>& y, double h) {
    using detail::axpy;
    const auto k1 = f(t, y);
    const auto k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const auto k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i)
        r[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_init = 1e-3;
    double h_min = 1e-15;
    double h_max = 1.0;
    double safety = 0.9;
};

// Runge-Kutta-Fehlberg 4(5) with PI step-size control. Steps are clamped so the
// integration lands exactly on t_end; `observer(t, y)` runs after each accepted
// step; `stop(t, y)` can end the integration early (returns true to stop).
template <std::size_t N, class Rhs, class Observer, class StopPredicate>
double rkf45_integrate(const Rhs& f, double& t, std::array<double, N>& y, double t_end,
                       const AdaptiveOptions& opt, Observer&& observer, StopPredicate&& stop) {
    using detail::axpy;
    static constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 0.5;
    static constexpr double a21 = 1.0 / 4;
    static constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
    static constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
    static constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513,
                            a54 = -845.0 / 4104;
    static constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565,
                            a64 = 1859.0 / 4104, a65 = -11.0 / 40;
    static constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430,
                            b5 = -9.0 / 50, b6 = 2.0 / 55;
    static constexpr double e1 = 16.0 / 135 - 25.0 / 216, e3 = 6656.0 / 12825 - 1408.0 / 2565,
                            e4 = 28561.0 / 56430 - 2197.0 / 4104, e5 = -9.0 / 50 + 1.0 / 5,
                            e6 = 2.0 / 55;

    const double dir = (t_end >= t) ? 1.0 : -1.0;
    double h = dir * std::min(opt.h_init, opt.h_max);
    double err_prev = 1.0;

    while (dir * (t_end - t) > 0.0) {
        if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
        if (std::abs(h) < opt.h_min) throw StepUnderflow("rkf45: step size underflow");

        const auto k1 = f(t, y);
        const auto k2 = f(t + c2 * h, axpy(y, a21 * h, k1));
        std::array<double, N> tmp;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const auto k3 = f(t + c3 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const auto k4 = f(t + c4 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const auto k5 = f(t + c5 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] +
                     h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const auto k6 = f(t + c6 * h, tmp);

        std::array<double, N> ynew;
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
            const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0 || std::abs(h) <= opt.h_min * 1.0000001) {
            t += h;
            y = ynew;
            observer(t, y);
            if (stop(t, y)) return t;
            err_prev = std::max(err, 1e-10);
        }
        double fac = opt.safety * std::pow(std::max(err, 1e-12), -0.14) *
                     std::pow(err_prev, 0.08); // PI controller
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opt.h_max) h = dir * opt.h_max;
    }
    return t;
}

template <std::size_t N, class Rhs>
double rkf45_integrate(const Rhs& f, double& t, std::array<double, N>& y, double t_end,
                       const AdaptiveOptions& opt = {}) {
    return rkf45_integrate<N>(
        f, t, y, t_end, opt, [](double, const std::array<double, N>&) {},
        [](double, const std::array<double, N>&) { return false; });
}

} // namespace shapesphere
