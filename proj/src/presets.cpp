#include "shapesphere/presets.hpp"

#include <cmath>

#include "shapesphere/collision.hpp"
#include "shapesphere/errors.hpp"

namespace shapesphere {

namespace {

// Unit-size equilateral configuration for the given masses (a central
// configuration for any mass distribution).
std::array<Vec3, 3> equilateral_positions(const MassDistribution& m) {
    // side length s = 1/sqrt(mhat) gives I = 1
    const double side = 1.0 / std::sqrt(m.mhat());
    std::array<Vec3, 3> p = {Vec3{0.0, 0.0, 0.0}, Vec3{side, 0.0, 0.0},
                             Vec3{0.5 * side, side * std::sqrt(3.0) / 2.0, 0.0}};
    Vec3 com{};
    for (int i = 0; i < 3; ++i) com += m[i] * p[i];
    for (auto& q : p) q -= com;
    return p;
}

} // namespace

Preset preset_lagrange_circular(const MassDistribution& m) {
    Preset ps;
    ps.name = "lagrange-circular";
    ps.masses = m;
    const auto pos = equilateral_positions(m);
    SimState s;
    s.pos = pos;
    const double U = newton_potential(MTriangle(pos[0], pos[1], pos[2], m));
    const double I = 1.0;
    const double w = std::sqrt(U / I); // omega^2 = U/I for a central configuration
    const Vec3 k{0.0, 0.0, 1.0};
    for (int i = 0; i < 3; ++i) s.vel[i] = w * k.cross(pos[i]);
    ps.state = s;
    ps.h = total_energy(s, m);
    ps.omega = angular_momentum(s, m).z;
    ps.t_char = 2.0 * M_PI / w;
    return ps;
}

Preset preset_perturbed_lagrange(const MassDistribution& m, double eps) {
    Preset ps = preset_lagrange_circular(m);
    ps.name = "perturbed-lagrange";
    // multiplicative velocity perturbation (safe for extreme mass ratios),
    // then restore the total linear momentum
    const double c[3] = {1.0, -0.6, 0.4};
    for (int i = 0; i < 3; ++i) ps.state.vel[i] *= 1.0 + eps * c[i];
    const Vec3 p = linear_momentum(ps.state, m);
    for (int i = 0; i < 3; ++i) ps.state.vel[i] -= p;
    ps.h = total_energy(ps.state, m);
    ps.omega = angular_momentum(ps.state, m).z;
    return ps;
}

Preset preset_spatial_tilt(const MassDistribution& m, double eps) {
    // Tilted circular Lagrange orbit. Pick a Routh-stable mass ratio and the
    // shape point stays near the interior Lagrange point indefinitely, away
    // from both chart poles and the eclipse circle.
    Preset ps = preset_lagrange_circular(m);
    ps.name = "spatial-tilt";
    const Vec3 d0{0.0, 0.0, eps * ps.state.vel[1].norm()};
    const Vec3 d1{0.0, 0.0, -0.5 * eps * ps.state.vel[2].norm()};
    ps.state.vel[1] += d0;
    ps.state.vel[2] += d1;
    ps.state.vel[0] -= (m[1] * d0 + m[2] * d1) / m[0];
    ps.h = total_energy(ps.state, m);
    ps.omega = angular_momentum(ps.state, m).z;
    return ps;
}

MassDistribution routh_stable_masses() { return {0.99, 0.007, 0.003}; }

double isosceles_alpha0() {
    static const double value = [] {
        AdaptiveOptions ode;
        ode.abs_tol = ode.rel_tol = 1e-12;
        ode.h_init = 1e-4;
        const auto sol = collision::solve_wall(collision::WallCase::MeridianTheta0, M_PI / 2.0,
                                               0.01, 14, ode);
        return sol.alpha.back();
    }();
    return value;
}

double isosceles_beta0() {
    // cos(alpha0) = cos(beta) / sqrt(1 + 2 sin^2 beta)
    const double c2 = std::cos(isosceles_alpha0()) * std::cos(isosceles_alpha0());
    const double cb2 = 3.0 * c2 / (1.0 + 2.0 * c2);
    return std::acos(std::sqrt(cb2));
}

Preset preset_isosceles_beta0() {
    Preset ps;
    ps.name = "isosceles-beta0";
    ps.masses = MassDistribution::equal();
    const double beta = isosceles_beta0();
    const double x = std::sqrt(1.5), y = 0.0;
    const double v = std::sqrt((5.0 / 6.0) * std::sqrt(2.0 / 3.0) /
                               (1.0 + 2.0 * std::sin(beta) * std::sin(beta)));
    const double vx = v * std::cos(beta), vy = v * std::sin(beta);
    SimState s;
    s.pos = {Vec3{-x, y, 0.0}, Vec3{x, y, 0.0}, Vec3{0.0, -2.0 * y, 0.0}};
    s.vel = {Vec3{-vx, vy, 0.0}, Vec3{vx, vy, 0.0}, Vec3{0.0, -2.0 * vy, 0.0}};
    ps.state = s;
    ps.h = total_energy(s, ps.masses);
    ps.omega = angular_momentum(s, ps.masses).z;
    ps.t_char = 1.0;
    ps.t_collision = -1.0; // collision in the past
    return ps;
}

namespace {

SimState collinear_state_from_alpha(double s0, double alpha, const MassDistribution& m) {
    const double theta = s0;
    const double bt[3] = {-M_PI / 3.0, M_PI / 3.0, M_PI};
    double I[3], N[3], Np[3];
    for (int i = 0; i < 3; ++i) {
        N[i] = (1.0 / 3.0) * (1.0 + std::cos(theta - bt[i]));
        Np[i] = -(1.0 / 3.0) * std::sin(theta - bt[i]);
        I[i] = N[i];
    }
    double xpos[3];
    xpos[0] = -std::sqrt(I[0] / m[0]);
    xpos[1] = std::sqrt(I[1] / m[1]);
    xpos[2] = -(m[0] * xpos[0] + m[1] * xpos[1]) / m[2];
    SimState s;
    for (int i = 0; i < 3; ++i) s.pos[i] = {xpos[i], 0.0, 0.0};
    const double U = newton_potential(s.triangle(m));
    const double rho_dot = std::cos(alpha) * std::sqrt(2.0 * U);
    const double theta_dot = 2.0 * std::sin(alpha) * std::sqrt(2.0 * U);
    for (int i = 0; i < 2; ++i) {
        const double Idot = 2.0 * rho_dot * N[i] + Np[i] * theta_dot;
        s.vel[i] = {Idot / (2.0 * m[i] * xpos[i]), 0.0, 0.0};
    }
    s.vel[2] = {-(m[0] * s.vel[0].x + m[1] * s.vel[1].x) / m[2], 0.0, 0.0};
    return s;
}

// Bisection refinement of the collision-manifold shooting angle: an overshoot
// crosses the theta = 0 meridian before the size floor, an undershoot rebounds
// with theta > 0.
double refine_collinear_alpha(double s0, double alpha_guess, const MassDistribution& m) {
    // theta > 0 puts the middle body at x3 < 0 here; crossing the Euler
    // meridian before the size floor flips that sign
    const auto crosses = [&](double alpha) {
        SimState st = collinear_state_from_alpha(s0, alpha, m);
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-13;
        opt.collision_factor = 1e-8;
        const Trajectory traj = integrate_newton(st, m, 0.0, -1.0, opt);
        for (const auto& smp : traj.samples) {
            if (smp.state.pos[2].x > 0.0) return true;
        }
        return false;
    };
    double lo = alpha_guess * (1.0 - 3e-6), hi = alpha_guess * (1.0 + 3e-6);
    const bool cross_hi = crosses(hi);
    if (crosses(lo) == cross_hi) return alpha_guess; // bracket failed: keep the series value
    for (int it = 0; it < 42; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (crosses(mid) == cross_hi) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Preset preset_collinear_explosion(double s0) {
    Preset ps;
    ps.name = "collinear-explosion";
    ps.masses = MassDistribution::equal();
    const auto m = ps.masses;

    const auto b = collision::wall_alpha_series(collision::WallCase::Equator, 12);
    double alpha = 0.0;
    for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) alpha = (alpha + b[k]) * s0;
    static double refined = 0.0;
    static double refined_s0 = -1.0;
    if (refined_s0 != s0) {
        refined = refine_collinear_alpha(s0, alpha, m);
        refined_s0 = s0;
    }
    alpha = refined;

    ps.state = collinear_state_from_alpha(s0, alpha, m);
    ps.h = total_energy(ps.state, m);
    ps.omega = 0.0;
    ps.t_collision = -1.0;
    return ps;
}

Preset preset_by_name(const std::string& name, const MassDistribution& m) {
    if (name == "lagrange-circular") return preset_lagrange_circular(m);
    if (name == "perturbed-lagrange") return preset_perturbed_lagrange(m);
    if (name == "spatial-tilt") return preset_spatial_tilt(m);
    if (name == "isosceles-beta0") return preset_isosceles_beta0();
    if (name == "collinear-explosion") return preset_collinear_explosion();
    throw ConfigError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"lagrange-circular", "perturbed-lagrange", "spatial-tilt", "isosceles-beta0",
            "collinear-explosion"};
}

} // namespace shapesphere
