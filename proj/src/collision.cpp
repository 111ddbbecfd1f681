#include "shapesphere/collision.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "shapesphere/errors.hpp"
#include "shapesphere/numerics.hpp"
#include "shapesphere/potential.hpp"

namespace shapesphere::collision {

namespace {

constexpr double kBinaryTheta[3] = {-M_PI / 3.0, M_PI / 3.0, M_PI};

Vec3 binary_unit(int i) {
    return {std::cos(kBinaryTheta[i]), std::sin(kBinaryTheta[i]), 0.0};
}

struct AnsatzResiduals {
    Taylor E1, E2;
};

// Residual series of the two phi-parametrized equations for the current
// coefficient vectors. Valid through phi^M where M is the Taylor order.
AnsatzResiduals ansatz_residuals(double theta0, const std::vector<double>& f,
                                 const std::vector<double>& g, int M) {
    const Taylor phi = Taylor::variable(M);
    Taylor h(M); // theta - theta0
    for (size_t k = 0; k < f.size(); ++k)
        if (static_cast<int>(k) + 1 <= M) h.at(static_cast<int>(k) + 1) = f[k];
    Taylor alpha(M);
    for (size_t k = 0; k < g.size(); ++k)
        if (static_cast<int>(k) + 1 <= M) alpha.at(static_cast<int>(k) + 1) = g[k];

    const Taylor theta_p = h.derivative();
    const Taylor theta_pp = theta_p.derivative();
    auto [sphi, cphi] = Taylor::sincos0(phi);
    auto [salpha, calpha] = Taylor::sincos0(alpha);
    const Taylor alpha_p = alpha.derivative();

    Taylor U(M), Uphi(M), Utheta(M);
    for (int i = 0; i < 3; ++i) {
        auto [si, ci] = Taylor::sincos(theta0 - kBinaryTheta[i], h);
        const Taylor w = 1.0 - sphi * ci;
        const Taylor wm12 = w.pow(-0.5);
        const Taylor wm32 = w.pow(-1.5);
        U = U + (1.0 / 3.0) * wm12;
        Uphi = Uphi + (1.0 / 6.0) * (cphi * ci) * wm32;
        Utheta = Utheta - (1.0 / 6.0) * (sphi * si) * wm32;
    }

    const Taylor sphi2 = sphi * sphi;
    const Taylor warc = (1.0 + sphi2 * theta_p * theta_p).sqrt();
    const Taylor salpha2 = salpha * salpha;

    AnsatzResiduals out;
    out.E1 = 2.0 * U * salpha * alpha_p + 0.5 * U * salpha * warc -
             calpha * (Uphi + Utheta * theta_p);
    out.E2 = 2.0 * U * salpha2 * sphi2 * theta_pp - Utheta +
             (4.0 * U * sphi * cphi * salpha2 + Uphi * sphi2) * theta_p -
             Utheta * sphi2 * theta_p * theta_p +
             (2.0 * U * sphi * cphi * salpha2 * sphi2 + Uphi * sphi2 * sphi2) * theta_p *
                 theta_p * theta_p;
    return out;
}

// Solves r(x) = 0 where r is affine in x, probing at x = 0 and x = 1.
double affine_solve(const std::function<double(double)>& r) {
    const double r0 = r(0.0);
    const double r1 = r(1.0);
    const double slope = r1 - r0;
    if (slope == 0.0) throw OrderTooHigh("series_init: singular coefficient equation");
    return -r0 / slope;
}

} // namespace

LeadingExponents leading_exponents() {
    LeadingExponents e;
    const double s13 = std::sqrt(13.0);
    const double s1185 = std::sqrt(1185.0);
    e.a0_lagrange = (s13 - 1.0) / 8.0;
    e.b0_euler = (s1185 / 5.0 - 1.0) / 8.0;
    e.a0_escape = -(s13 + 1.0) / 8.0;
    e.b0_escape = -(s1185 / 5.0 + 1.0) / 8.0;
    return e;
}

CollisionCurveState SeriesCoefficients::eval(double phi) const {
    CollisionCurveState st;
    st.phi = phi;
    double th = 0.0, thp = 0.0, al = 0.0;
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) th = (th + f[k]) * phi;
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) thp = thp * phi + (k + 1) * f[k];
    for (int k = static_cast<int>(g.size()) - 1; k >= 0; --k) al = (al + g[k]) * phi;
    st.theta = theta0 + th;
    st.dtheta_dphi = thp;
    st.alpha = al;
    return st;
}

SeriesCoefficients series_init(double theta0, int order, double phi0, const SeriesOptions& opt) {
    if (order < 2) throw NumericalError("series_init: order must be >= 2");
    const int M = order + 4;
    SeriesCoefficients sc;
    sc.theta0 = theta0;
    sc.order = order;
    sc.f.assign(order + 1, 0.0);
    sc.g.assign(order + 1, 0.0);
    sc.g[0] = leading_exponents().a0_lagrange;

    // order-0 sanity: the quadratic for a0 must be satisfied
    {
        const auto res = ansatz_residuals(theta0, sc.f, sc.g, 4);
        if (std::abs(res.E1[1]) > 1e-12)
            throw NumericalError("series_init: a0 quadratic residual too large");
    }

    // f0 from the curvature equation at order 3
    sc.f[0] = affine_solve([&](double x) {
        auto fv = sc.f;
        fv[0] = x;
        return ansatz_residuals(theta0, fv, sc.g, 6).E2[3];
    });

    for (int n = 1; n <= order; ++n) {
        sc.g[n] = affine_solve([&](double x) {
            auto gv = sc.g;
            gv[n] = x;
            return ansatz_residuals(theta0, sc.f, gv, M).E1[n + 1];
        });
        sc.f[n] = affine_solve([&](double x) {
            auto fv = sc.f;
            fv[n] = x;
            return ansatz_residuals(theta0, fv, sc.g, M).E2[n + 3];
        });
    }

    // arc-length parametrized coefficients: s(phi) = int sqrt(1 + sin^2 phi theta'^2)
    {
        const Taylor phi = Taylor::variable(M);
        Taylor h(M);
        for (int k = 0; k <= order; ++k) h.at(k + 1) = sc.f[k];
        Taylor alpha(M);
        for (int k = 0; k <= order; ++k) alpha.at(k + 1) = sc.g[k];
        auto [sphi, cphi] = Taylor::sincos0(phi);
        (void)cphi;
        const Taylor theta_p = h.derivative();
        const Taylor s_of_phi =
            ((1.0 + sphi * sphi * theta_p * theta_p).sqrt()).antiderivative();
        const Taylor phi_of_s = s_of_phi.revert();
        const Taylor d_of_s = h.compose(phi_of_s);
        const Taylor a_of_s = alpha.compose(phi_of_s);
        sc.c.assign(order + 1, 0.0);
        sc.d.assign(order + 1, 0.0);
        sc.a.assign(order + 1, 0.0);
        for (int k = 0; k <= order; ++k) {
            sc.c[k] = phi_of_s[k + 1];
            sc.d[k] = d_of_s[k + 1];
        }
        sc.a[0] = a_of_s[1];
        for (int k = 1; k <= order; ++k) sc.a[k] = a_of_s[k + 1] / sc.a[0];
    }

    // residual of the explicit system at the handoff radius
    const CollisionCurveState st = sc.eval(phi0);
    const auto rhs = collision_ode_rhs(phi0, st.theta, st.dtheta_dphi, st.alpha);
    double thpp_series = 0.0, alphap_series = 0.0;
    for (int k = 1; k <= order; ++k)
        thpp_series += (k + 1) * k * sc.f[k] * std::pow(phi0, k - 1);
    for (int k = 0; k <= order; ++k)
        alphap_series += (k + 1) * sc.g[k] * std::pow(phi0, k);
    if (std::abs(thpp_series - rhs[1]) > opt.residual_tol ||
        std::abs(alphap_series - rhs[2]) > opt.residual_tol)
        throw OrderTooHigh("series_init: residual at handoff radius exceeds tolerance");
    return sc;
}

std::array<double, 3> collision_ode_rhs(double phi, double theta, double theta_p, double alpha) {
    const auto u = u_star_equal_norm_partials(phi, theta);
    const double U = u[0], Uphi = u[1], Utheta = u[2];
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double w = std::sqrt(1.0 + sp * sp * theta_p * theta_p);
    const double csc2a = 1.0 / (sa * sa);

    const double alpha_p = -0.25 * w + ca / sa / (2.0 * U) * (Uphi + Utheta * theta_p);
    const double theta_pp =
        (1.0 / (2.0 * U)) *
        (Utheta * csc2a / (sp * sp) - (4.0 * U * cp / sp + Uphi * csc2a) * theta_p +
         Utheta * csc2a * theta_p * theta_p -
         (2.0 * U * sp * cp + Uphi * csc2a * sp * sp) * theta_p * theta_p * theta_p);
    return {theta_p, theta_pp, alpha_p};
}

namespace {

double grad_norm_equal(double phi, double theta) {
    const auto u = u_star_equal_norm_partials(phi, theta);
    const double sp = std::sin(phi);
    const double gtheta = (sp > 1e-12) ? u[2] / sp : 0.0;
    return std::hypot(u[1], gtheta);
}

bool near_binary_point(double phi, double theta, double guard) {
    const Vec3 p{std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta),
                 std::cos(phi)};
    for (int i = 0; i < 3; ++i)
        if ((p - binary_unit(i)).norm() < guard) return true;
    return false;
}

} // namespace

CurveResult continue_curve(const CollisionCurveState& init, double phi_end,
                           const ContinuationOptions& opt) {
    CurveResult out;
    using State3 = std::array<double, 3>; // (theta, theta', alpha)
    State3 y{init.theta, init.dtheta_dphi, init.alpha};
    double phi = init.phi;
    out.samples.push_back({phi, y[0], y[1], y[2]});

    auto outputs = opt.output_phi;
    std::sort(outputs.begin(), outputs.end());
    size_t next_out = 0;
    while (next_out < outputs.size() && outputs[next_out] <= phi + 1e-15) {
        out.at_output.push_back({outputs[next_out], y[0], y[1], y[2]});
        ++next_out;
    }

    const auto rhs = [](double p, const State3& s) -> State3 {
        const auto r = collision_ode_rhs(p, s[0], s[1], s[2]);
        return {r[0], r[1], r[2]};
    };

    const double rk4_band = 0.02; // fixed-step finish near the equator
    bool stopped = false;
    const auto check_events = [&](double p, const State3& s) {
        if (std::abs(std::sin(s[2])) < opt.cusp_sin_alpha &&
            grad_norm_equal(p, s[0]) > opt.cusp_grad_floor) {
            out.reason = StopReason::CuspDetected;
            stopped = true;
            return true;
        }
        if (near_binary_point(p, s[0], opt.binary_guard)) {
            out.reason = StopReason::BinaryCollisionDetected;
            stopped = true;
            return true;
        }
        return false;
    };

    const auto record = [&](double p, const State3& s) {
        out.samples.push_back({p, s[0], s[1], s[2]});
    };

    // stations and the RK4 band boundary split the integration into legs
    std::vector<double> legs;
    for (size_t i = next_out; i < outputs.size(); ++i)
        if (outputs[i] < phi_end - 1e-15) legs.push_back(outputs[i]);
    legs.push_back(phi_end);

    const double band_start = M_PI / 2.0 - rk4_band;
    for (double target : legs) {
        if (stopped) break;
        // adaptive part of this leg
        const double adaptive_end = std::min(target, std::max(band_start, phi));
        if (adaptive_end > phi) {
            try {
                rkf45_integrate<3>(
                    rhs, phi, y, adaptive_end, opt.ode,
                    [&](double p, const State3& s) { record(p, s); },
                    [&](double p, const State3& s) { return check_events(p, s); });
            } catch (const StepUnderflow&) {
                out.reason = StopReason::StepUnderflow;
                stopped = true;
            }
        }
        if (stopped) break;
        if (phi < target) {
            // fixed RK4 finish
            const double hfix = 2e-4;
            while (phi < target - 1e-15) {
                const double step = std::min(hfix, target - phi);
                y = rk4_step(rhs, phi, y, step);
                phi += step;
                record(phi, y);
                if (check_events(phi, y)) break;
            }
        }
        if (stopped) break;
        if (std::abs(phi - target) < 1e-12 && target < phi_end - 1e-15) {
            out.at_output.push_back({target, y[0], y[1], y[2]});
        }
    }
    if (!stopped && std::abs(phi - phi_end) < 1e-12) {
        for (size_t i = next_out; i < outputs.size(); ++i)
            if (std::abs(outputs[i] - phi_end) < 1e-12)
                out.at_output.push_back({phi_end, y[0], y[1], y[2]});
    }
    out.phi_final = phi;
    return out;
}

CurveResult trace_curve(double theta0, double phi_end, double phi0, int order,
                        const ContinuationOptions& opt) {
    const SeriesCoefficients sc = series_init(theta0, order, phi0);
    return continue_curve(sc.eval(phi0), phi_end, opt);
}

Taylor wall_log_derivative_series(WallCase c, int order) {
    const int M = order + 2;
    const Taylor s = Taylor::variable(M);
    auto [ss, cs] = Taylor::sincos0(s);
    Taylor u(M);
    if (c == WallCase::MeridianTheta0 || c == WallCase::MeridianTheta60) {
        const double sgn = (c == WallCase::MeridianTheta0) ? 1.0 : -1.0;
        // U*(phi, 0) = (1/3)(2 (1 - sin(phi)/2)^{-1/2} + (1 + sin(phi))^{-1/2})
        const Taylor sphi = ss * sgn;
        u = (1.0 / 3.0) * (2.0 * (1.0 - 0.5 * sphi).pow(-0.5) + (1.0 + sphi).pow(-0.5));
    } else {
        // U*(pi/2, theta), theta measured from e3
        Taylor acc(M);
        for (int i = 0; i < 3; ++i) {
            auto [sd, cd] = Taylor::sincos(-kBinaryTheta[i], s); // cos(theta - bt) series
            (void)sd;
            acc = acc + (1.0 - cd).pow(-0.5);
        }
        u = (1.0 / 3.0) * acc;
    }
    return u.derivative() / u;
}

std::vector<double> wall_alpha_series(WallCase c, int order) {
    const int M = order + 3;
    const Taylor D = wall_log_derivative_series(c, M);
    // reconstruct u from D: u = exp(int D); only u'/u enters the residual, so
    // work directly with E := sin(a) a' + 1/4 sin(a) - 1/2 cos(a) D.
    std::vector<double> b(order + 1, 0.0);
    const auto leading = leading_exponents();
    b[0] = (c == WallCase::Equator) ? leading.b0_euler : leading.a0_lagrange;

    const auto residual = [&](const std::vector<double>& bv, int upto) -> Taylor {
        Taylor alpha(M);
        for (int k = 0; k <= std::min<int>(upto, order); ++k) alpha.at(k + 1) = bv[k];
        auto [sa, ca] = Taylor::sincos0(alpha);
        return sa * alpha.derivative() + 0.25 * sa - 0.5 * ca * D;
    };
    for (int n = 1; n <= order; ++n) {
        b[n] = affine_solve([&](double x) {
            auto bv = b;
            bv[n] = x;
            return residual(bv, n)[n + 1];
        });
    }
    return b;
}

double WallSolution::alpha_at(double sq) const {
    if (s.empty()) throw NumericalError("WallSolution::alpha_at: empty");
    auto it = std::lower_bound(s.begin(), s.end(), sq);
    if (it == s.begin()) return alpha.front();
    if (it == s.end()) return alpha.back();
    const size_t i = static_cast<size_t>(it - s.begin());
    const double h = s[i] - s[i - 1];
    const double t = (sq - s[i - 1]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * alpha[i - 1] + h10 * h * alpha_prime[i - 1] + h01 * alpha[i] +
           h11 * h * alpha_prime[i];
}

WallSolution solve_wall(WallCase c, double s_max, double s0, int order,
                        const AdaptiveOptions& ode) {
    WallSolution out;
    const auto b = wall_alpha_series(c, order);
    double a0 = 0.0;
    for (int k = order; k >= 0; --k) a0 = (a0 + b[k]) * s0;

    const auto D = [&](double s) -> double {
        if (c == WallCase::MeridianTheta0) {
            const auto u = u_star_equal_norm_partials(s, 0.0);
            return u[1] / u[0];
        }
        if (c == WallCase::MeridianTheta60) {
            const auto u = u_star_equal_norm_partials(s, M_PI / 3.0);
            return u[1] / u[0];
        }
        const auto u = u_star_equal_norm_partials(M_PI / 2.0, s);
        return u[2] / u[0];
    };

    using State1 = std::array<double, 1>;
    State1 y{a0};
    double s = s0;
    const auto rhs = [&](double sv, const State1& av) -> State1 {
        return {-0.25 + 0.5 * std::cos(av[0]) / std::sin(av[0]) * D(sv)};
    };
    out.s.push_back(s);
    out.alpha.push_back(a0);
    out.alpha_prime.push_back(rhs(s, y)[0]);
    const auto observer = [&](double sv, const State1& av) {
        out.s.push_back(sv);
        out.alpha.push_back(av[0]);
        out.alpha_prime.push_back(rhs(sv, av)[0]);
    };
    bool cusp = false;
    const auto stop = [&](double sv, const State1& av) {
        if (av[0] < 5e-4 && D(sv) < 0.0) {
            cusp = true;
            return true;
        }
        if (av[0] > M_PI / 2.0 - 5e-4) return true; // binary collision endpoint
        return false;
    };
    AdaptiveOptions o = ode;
    o.h_max = 1e-2;
    try {
        rkf45_integrate<1>(rhs, s, y, s_max, o, observer, stop);
    } catch (const StepUnderflow&) {
        cusp = (y[0] < 1e-3);
    }
    if (cusp) {
        // alpha^2 decreases linearly near the cusp: extrapolate the halt point
        const double a = y[0];
        const double ap = rhs(s, y)[0];
        out.first_cusp = s - a * a / (2.0 * a * ap);
        out.cusp_found = true;
    }
    return out;
}

CurveSample apply_symmetry(const CurveSample& s, const SymmetryOp& op) {
    CurveSample r = s;
    r.theta += op.rotation * 2.0 * M_PI / 3.0;
    if (op.reflect) {
        r.theta = -r.theta;
        r.theta_p = -r.theta_p;
    }
    if (op.mirror) {
        r.phi = M_PI - r.phi;
        r.theta_p = -r.theta_p;
    }
    if (op.reverse) r.alpha = M_PI - r.alpha;
    return r;
}

std::vector<CurveSample> apply_symmetry(const std::vector<CurveSample>& curve,
                                        const SymmetryOp& op) {
    std::vector<CurveSample> out;
    out.reserve(curve.size());
    for (const auto& s : curve) out.push_back(apply_symmetry(s, op));
    if (op.reverse) std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct GradientData {
    Vec3 B, grad;
    std::array<double, 3> delta{}, e{}, f{};
};

GradientData gradient_data(const Vec3& p, double critical_tol) {
    GradientData gd;
    const double k = std::sqrt(2.0) / 3.0;
    for (int i = 0; i < 3; ++i) {
        gd.delta[i] = (p - binary_unit(i)).norm();
        if (gd.delta[i] < critical_tol)
            throw CriticalPointUndefined("gradient_flow_curvature: at a collision point");
        gd.e[i] = 1.0 / std::pow(gd.delta[i], 3);
        gd.B += k * gd.e[i] * binary_unit(i);
    }
    gd.grad = gd.B - gd.B.dot(p) * p;
    if (gd.grad.norm() < critical_tol)
        throw CriticalPointUndefined("gradient_flow_curvature: at a critical point");
    const Vec3 pxB = p.cross(gd.B);
    for (int i = 0; i < 3; ++i)
        gd.f[i] = 3.0 * std::sqrt(2.0) / std::pow(gd.delta[i], 5) *
                  pxB.dot(p.cross(binary_unit(i)));
    return gd;
}

} // namespace

double gradient_flow_curvature(const Vec3& p, double critical_tol) {
    const GradientData gd = gradient_data(p, critical_tol);
    const double atilde = (gd.e[0] * gd.f[1] - gd.e[1] * gd.f[0]) +
                          (gd.e[1] * gd.f[2] - gd.e[2] * gd.f[1]) +
                          (gd.e[2] * gd.f[0] - gd.e[0] * gd.f[2]);
    const double g3 = std::pow(gd.grad.norm(), 3);
    return std::sqrt(6.0) / 18.0 * p.z * atilde / g3;
}

double gradient_flow_curvature_product_form(const Vec3& p, double critical_tol) {
    const GradientData gd = gradient_data(p, critical_tol);
    Vec3 C{};
    for (int i = 0; i < 3; ++i) C += (gd.f[i] / 9.0) * binary_unit(i);
    const double g3 = std::pow(gd.grad.norm(), 3);
    return 3.0 * triple(gd.B, C, p) / g3;
}

double rho_from_alpha(const std::function<double(double)>& alpha_of_s, double s_ref,
                      double rho_ref, double s_target, double cot_guard) {
    const auto integrand = [&](double s) {
        const double a = alpha_of_s(s);
        const double sa = std::sin(a);
        if (std::abs(sa) < cot_guard)
            throw CotangentBlowup("rho_from_alpha: alpha at 0 or pi");
        return 0.5 * std::cos(a) / sa;
    };
    const double integral = integrate_adaptive(integrand, s_ref, s_target, 1e-11, 32);
    return rho_ref * std::exp(integral);
}

AsymptoticsFit asymptotics_check(const AsymptoticsSeries& data, double min_decades) {
    const size_t n = data.t.size();
    if (n < 8) throw InsufficientApproach("asymptotics_check: too few samples");
    double rho_max = 0.0, rho_min = std::numeric_limits<double>::max();
    for (double r : data.rho) {
        rho_max = std::max(rho_max, r);
        rho_min = std::min(rho_min, r);
    }
    const double decades = std::log10(rho_max / rho_min);
    if (decades < min_decades)
        throw InsufficientApproach("asymptotics_check: fewer rho decades than required");

    // times must increase toward the collision (t -> t0 from below)
    const double t_last = data.t.back();
    const double dt_last = t_last - data.t[n - 2];

    const auto fit_for_t0 = [&](double t0) {
        std::vector<double> lx(n), ly(n);
        for (size_t i = 0; i < n; ++i) {
            lx[i] = std::log(t0 - data.t[i]);
            ly[i] = std::log(data.rho[i]);
        }
        return linear_fit(lx, ly);
    };
    // 1-D search for the t0 minimizing the fit residual
    const double lo = t_last + 1e-14, hi = t_last + std::max(1e-10, 1e3 * dt_last);
    const double t0 = golden_minimize(
        [&](double cand) { return fit_for_t0(cand).residual_rms; }, lo, hi, 1e-13);

    AsymptoticsFit fit;
    fit.t0 = t0;
    fit.decades = static_cast<int>(decades);
    const LinearFit rf = fit_for_t0(t0);
    fit.rho_exponent = rf.slope;
    fit.kappa = std::exp(rf.intercept);

    std::vector<double> lx(n), ls, lt;
    for (size_t i = 0; i < n; ++i) lx[i] = std::log(t0 - data.t[i]);
    if (!data.s.empty()) {
        std::vector<double> ly(n);
        for (size_t i = 0; i < n; ++i) ly[i] = std::log(std::max(data.s[i], 1e-300));
        fit.s_exponent = linear_fit(lx, ly).slope;
    }
    if (!data.tsigma.empty()) {
        std::vector<double> ly(n);
        for (size_t i = 0; i < n; ++i) ly[i] = std::log(std::max(data.tsigma[i], 1e-300));
        fit.tsigma_exponent = linear_fit(lx, ly).slope;
    }
    return fit;
}

std::vector<double> table_columns() {
    return {M_PI / 4.0,           3.0 * M_PI / 8.0,      15.0 * M_PI / 32.0,
            63.0 * M_PI / 128.0,  255.0 * M_PI / 512.0,  1023.0 * M_PI / 2048.0};
}

TableSweep sweep_tables(const std::vector<double>& theta0, const std::vector<double>& columns,
                        int threads, double phi0, int order) {
    TableSweep out;
    out.theta0 = theta0;
    out.columns = columns;
    const size_t n = theta0.size();
    out.alpha.assign(n, std::vector<double>(columns.size(), 0.0));
    out.theta.assign(n, std::vector<double>(columns.size(), 0.0));
    out.theta_p.assign(n, std::vector<double>(columns.size(), 0.0));

    const auto work = [&](size_t row) {
        ContinuationOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
        opt.output_phi = columns;
        const double phi_end = *std::max_element(columns.begin(), columns.end());
        const auto res = trace_curve(theta0[row], phi_end, phi0, order, opt);
        for (const auto& s : res.at_output) {
            for (size_t c = 0; c < columns.size(); ++c) {
                if (std::abs(s.phi - columns[c]) < 1e-9) {
                    out.alpha[row][c] = s.alpha;
                    out.theta[row][c] = s.theta;
                    out.theta_p[row][c] = s.theta_p;
                }
            }
        }
    };

    int nthreads = threads;
    if (nthreads <= 0) nthreads = 1;
    if (nthreads == 1) {
        for (size_t r = 0; r < n; ++r) work(r);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t r = next.fetch_add(1);
                    if (r >= n) return;
                    work(r);
                }
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace shapesphere::collision
