#include <doctest.h>

#include <cmath>
#include <random>

#include "shapesphere/dynamics.hpp"
#include "shapesphere/kinematics.hpp"
#include "shapesphere/numerics.hpp"
#include "shapesphere/potential.hpp"
#include "shapesphere/presets.hpp"
#include "test_common.hpp"

using namespace shapesphere;
using test_common::random_masses;
using test_common::random_planar_triangle;

namespace {

ReducedPlanarState project_state(const SimState& s, const MassDistribution& m) {
    ReducedPlanarState rs;
    rs.I = moments(s.triangle(m));
    for (int i = 0; i < 3; ++i) rs.Idot[i] = 2.0 * m[i] * s.pos[i].dot(s.vel[i]);
    return rs;
}

} // namespace

TEST_CASE("conservation drift over 1e5 forced small steps") {
    const MassDistribution m = MassDistribution::equal();
    Preset ps = preset_lagrange_circular(m);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    opt.ode.h_max = ps.t_char / 40000.0; // >= 1e5 steps over 2.5 periods
    const Trajectory traj = integrate_newton(ps.state, m, 0.0, 2.5 * ps.t_char, opt);
    REQUIRE(traj.reason == StopReason::Completed);
    CHECK(traj.steps >= 100000);
    CHECK(traj.energy_drift < 1e-9 * std::abs(ps.h));
    CHECK(traj.angmom_drift < 1e-9 * std::abs(ps.omega));
}

TEST_CASE("Lagrange circular orbit: shape point parked at the Lagrange point") {
    for (const MassDistribution m :
         {MassDistribution::equal(), MassDistribution(0.5, 0.3, 0.2)}) {
        Preset ps = preset_lagrange_circular(m);
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
        const Trajectory traj = integrate_newton(ps.state, m, 0.0, ps.t_char, opt);
        REQUIRE(traj.reason == StopReason::Completed);
        const SpecialPoints sp = special_points(m);
        double drift = 0.0;
        for (const auto& s : traj.samples) {
            const ITriple t = moments(s.state.triangle(m)).normalized();
            const ShapePoint p = itriple_to_shape(t, +1, m);
            drift = std::max(drift, (p.unit() - sp.lagrange_north).norm());
        }
        CHECK(drift < 1e-6);
    }
}

TEST_CASE("Lagrange-Jacobi identity for the reduced right-hand side") {
    auto g = test_common::rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    int used = 0;
    while (used < 300) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 3e-2);
        SimState s;
        for (int i = 0; i < 3; ++i) {
            s.pos[i] = tri.a(i);
            s.vel[i] = {u(g), u(g), 0.0};
        }
        s = to_com_frame(s, m);
        const int orientation = tri.signed_area() >= 0 ? +1 : -1;
        const double omega = angular_momentum(s, m).z;
        const ReducedPlanarState rs = project_state(s, m);
        std::array<double, 3> Idd{};
        try {
            Idd = reduced_rhs_planar(rs, omega, orientation, m);
        } catch (const EclipseSingularity&) {
            continue;
        }
        ++used;
        const double T = kinetic_energy(s, m);
        const double U = newton_potential(s.triangle(m));
        const double want = 4.0 * T - 2.0 * U;
        CHECK(Idd[0] + Idd[1] + Idd[2] ==
              doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("rigid circular Lagrange orbit is a fixed point of the reduced system") {
    const MassDistribution m(0.4, 0.35, 0.25);
    Preset ps = preset_lagrange_circular(m);
    const ReducedPlanarState rs = project_state(ps.state, m);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rs.Idot[i]) < 1e-13);
    const auto Idd = reduced_rhs_planar(rs, ps.omega, +1, m);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(Idd[i]) < 1e-10);
}

TEST_CASE("reduced accelerations match second differences of a direct run") {
    const MassDistribution m(0.45, 0.35, 0.2);
    Preset ps = preset_perturbed_lagrange(m, 2e-2);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    opt.ode.h_max = 2e-3;
    const Trajectory traj = integrate_newton(ps.state, m, 0.0, 1.0, opt);
    REQUIRE(traj.reason == StopReason::Completed);
    const double dt = 1e-4;
    int checked = 0;
    for (size_t k = 5; k + 1 < traj.samples.size(); k += 40) {
        const auto& smp = traj.samples[k];
        Trajectory fwd = integrate_newton(smp.state, m, 0.0, dt, opt);
        Trajectory bwd = integrate_newton(smp.state, m, 0.0, -dt, opt);
        const ITriple Ip = moments(fwd.samples.back().state.triangle(m));
        const ITriple I0 = moments(smp.state.triangle(m));
        const ITriple Im = moments(bwd.samples.back().state.triangle(m));
        const auto Idd =
            reduced_rhs_planar(project_state(smp.state, m), ps.omega, +1, m);
        for (int i = 0; i < 3; ++i) {
            const double fd = (Ip.I(i) - 2.0 * I0.I(i) + Im.I(i)) / (dt * dt);
            CHECK(std::abs(fd - Idd[i]) < 1e-5);
        }
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("reduced planar integration shadows the direct projection") {
    const MassDistribution m(0.97, 0.02, 0.01); // Routh-stable ratio
    Preset ps = preset_perturbed_lagrange(m, 1e-2);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    const double T = 2.0 * ps.t_char;
    const Trajectory direct = integrate_newton(ps.state, m, 0.0, T, opt);
    REQUIRE(direct.reason == StopReason::Completed);
    const ReducedTrajectory reduced =
        integrate_reduced_planar(project_state(ps.state, m), ps.omega, +1, m, 0.0, T, opt);
    REQUIRE(reduced.reason == StopReason::Completed);
    // compare I_i at the reduced sample times via Hermite interpolation of the
    // direct samples
    double worst = 0.0;
    size_t j = 0;
    for (const auto& r : reduced.samples) {
        while (j + 2 < direct.samples.size() && direct.samples[j + 1].t <= r.t) ++j;
        const auto& A = direct.samples[j];
        const auto& B = direct.samples[j + 1];
        const double h = B.t - A.t, uu = (r.t - A.t) / h;
        const ITriple IA = moments(A.state.triangle(m));
        const ITriple IB = moments(B.state.triangle(m));
        const ReducedPlanarState dA = project_state(A.state, m);
        const ReducedPlanarState dB = project_state(B.state, m);
        for (int i = 0; i < 3; ++i) {
            const double h00 = (1 + 2 * uu) * (1 - uu) * (1 - uu),
                         h10 = uu * (1 - uu) * (1 - uu);
            const double h01 = uu * uu * (3 - 2 * uu), h11 = uu * uu * (uu - 1);
            const double ref = h00 * IA.I(i) + h10 * h * dA.Idot[i] + h01 * IB.I(i) +
                               h11 * h * dB.Idot[i];
            worst = std::max(worst, std::abs(r.state.I.I(i) - ref));
        }
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("spherical form agrees with the planar form through the chart") {
    auto g = test_common::rng(7);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    int used = 0;
    while (used < 200) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 5e-2);
        SimState s;
        for (int i = 0; i < 3; ++i) {
            s.pos[i] = tri.a(i);
            s.vel[i] = {u(g), u(g), 0.0};
        }
        s = to_com_frame(s, m);
        if (s.triangle(m).signed_area() < 0) continue; // northern chart states
        const double h = total_energy(s, m);
        const double omega = angular_momentum(s, m).z;
        const ReducedPlanarState rs = project_state(s, m);
        const double I = rs.I.total();
        const ShapePoint p = itriple_to_shape(rs.I.normalized(), +1, m);
        if (std::sin(p.phi) < 0.1 || std::cos(p.phi) < 0.1) continue;

        // chart rates from the moment rates
        const auto bl = binary_longitudes(m, {});
        double rphi[2], rth[2], rhs2[2];
        for (int i = 0; i < 2; ++i) {
            const double tt = p.theta - bl[i];
            rphi[i] = m.dual(i) * std::cos(p.phi) * std::cos(tt);
            rth[i] = -m.dual(i) * std::sin(p.phi) * std::sin(tt);
            rhs2[i] = (rs.Idot[i] - rs.I.I(i) / I * (rs.Idot[0] + rs.Idot[1] + rs.Idot[2])) / I;
        }
        const double det = rphi[0] * rth[1] - rth[0] * rphi[1];
        if (std::abs(det) < 1e-4) continue;
        ++used;
        SphericalState ss;
        ss.rho = std::sqrt(I);
        ss.phi = p.phi;
        ss.theta = p.theta;
        ss.rho_dot = (rs.Idot[0] + rs.Idot[1] + rs.Idot[2]) / (2.0 * ss.rho);
        ss.phi_dot = (rth[1] * rhs2[0] - rth[0] * rhs2[1]) / det;
        ss.theta_dot = (rphi[0] * rhs2[1] - rphi[1] * rhs2[0]) / det;

        CHECK(std::abs(spherical_energy_residual(ss, h, omega, m)) < 1e-10);

        const auto sph = reduced_rhs_spherical(ss, h, omega, m);
        const auto pla = reduced_rhs_planar(rs, omega, +1, m);
        // transform (rho'', phi'', theta'') to I_i'' and compare
        for (int i = 0; i < 3; ++i) {
            const double tt = p.theta - bl[i];
            const double N = m.dual(i) * (1.0 + std::sin(p.phi) * std::cos(tt));
            const double Np = m.dual(i) * (std::cos(p.phi) * std::cos(tt) * ss.phi_dot -
                                           std::sin(p.phi) * std::sin(tt) * ss.theta_dot);
            const double Npp =
                m.dual(i) *
                (std::cos(p.phi) * std::cos(tt) * sph[1] - std::sin(p.phi) * std::sin(tt) * sph[2] -
                 std::sin(p.phi) * std::cos(tt) *
                     (ss.phi_dot * ss.phi_dot + ss.theta_dot * ss.theta_dot) -
                 2.0 * std::cos(p.phi) * std::sin(tt) * ss.phi_dot * ss.theta_dot);
            const double Idd = 2.0 * (ss.rho_dot * ss.rho_dot + ss.rho * sph[0]) * N +
                               4.0 * ss.rho * ss.rho_dot * Np + ss.rho * ss.rho * Npp;
            CHECK(std::abs(Idd - pla[i]) < 1e-8 * std::max(1.0, std::abs(pla[i])));
        }
    }
}

TEST_CASE("shape-invariant ray at a general-mass Lagrange point") {
    const MassDistribution m(0.5, 0.3, 0.2);
    const SpecialPoints sp = special_points(m);
    const ShapePoint p = ShapePoint::from_unit(sp.lagrange_north);
    SphericalState ss;
    ss.rho = 0.8;
    ss.phi = p.phi;
    ss.theta = p.theta;
    ss.rho_dot = 0.3;
    const double h = -0.1;
    const auto dd = reduced_rhs_spherical(ss, h, 0.0, m);
    CHECK(std::abs(dd[1]) < 1e-10); // gradient vanishes at the critical point
    CHECK(std::abs(dd[2]) < 1e-10);
    const double U = u_star(p, m).value / ss.rho;
    CHECK(dd[0] == doctest::Approx(-ss.rho_dot * ss.rho_dot / ss.rho + (U + 2 * h) / ss.rho)
                       .epsilon(1e-14));
}

TEST_CASE("energy integral holds along integrated spherical trajectories") {
    const MassDistribution m(0.45, 0.3, 0.25);
    // start from a perturbed Lagrange state expressed in the chart
    Preset ps = preset_perturbed_lagrange(m, 1e-2);
    const ReducedPlanarState rs = project_state(ps.state, m);
    const ShapePoint p = itriple_to_shape(rs.I.normalized(), +1, m);
    const auto bl = binary_longitudes(m, {});
    const double I = rs.I.total();
    double rphi[2], rth[2], rhs2[2];
    for (int i = 0; i < 2; ++i) {
        const double tt = p.theta - bl[i];
        rphi[i] = m.dual(i) * std::cos(p.phi) * std::cos(tt);
        rth[i] = -m.dual(i) * std::sin(p.phi) * std::sin(tt);
        rhs2[i] = (rs.Idot[i] - rs.I.I(i) / I * (rs.Idot[0] + rs.Idot[1] + rs.Idot[2])) / I;
    }
    const double det = rphi[0] * rth[1] - rth[0] * rphi[1];
    SphericalState ss;
    ss.rho = std::sqrt(I);
    ss.phi = p.phi;
    ss.theta = p.theta;
    ss.rho_dot = (rs.Idot[0] + rs.Idot[1] + rs.Idot[2]) / (2.0 * ss.rho);
    ss.phi_dot = (rth[1] * rhs2[0] - rth[0] * rhs2[1]) / det;
    ss.theta_dot = (rphi[0] * rhs2[1] - rphi[1] * rhs2[0]) / det;
    NewtonOptions oopt;
    oopt.ode.abs_tol = oopt.ode.rel_tol = 1e-12;
    const auto sph = integrate_reduced_spherical(ss, ps.h, ps.omega, m, 0.0, 20.0, oopt);
    REQUIRE(sph.size() > 100);
    double drift = 0.0;
    for (const auto& smp : sph)
        drift = std::max(drift,
                         std::abs(spherical_energy_residual(smp.state, ps.h, ps.omega, m)));
    CHECK(drift < 1e-7);
}

TEST_CASE("ray length: quadrature vs closed form, h >= 0 flag, minimum at Lagrange") {
    auto g = test_common::rng(11);
    std::uniform_real_distribution<double> uphi(0.2, M_PI / 2.0);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    for (int rep = 0; rep < 50; ++rep) {
        const MassDistribution m = random_masses(g);
        ShapePoint p{uphi(g), uth(g), false};
        const double h = -std::abs(0.2 + 0.5 * uth(g) / (2 * M_PI));
        double direct;
        try {
            direct = ray_length(p, h, m).value;
        } catch (const CollisionPole&) {
            continue;
        }
        CHECK(direct == doctest::Approx(ray_length_closed_form(p, h, m)).epsilon(1e-10));
    }
    CHECK_FALSE(ray_length(ShapePoint{0.4, 0.2, false}, 0.0, MassDistribution::equal()).finite);

    // minimal over the hemisphere at the Lagrange point (equal masses: pole)
    const MassDistribution m = MassDistribution::equal();
    const double L0 = ray_length(ShapePoint::pole(), -1.0, m).value;
    for (int k = 0; k < 200; ++k) {
        ShapePoint q{uphi(g) * 0.9, uth(g), false};
        CHECK(ray_length(q, -1.0, m).value >= L0 - 1e-12);
    }
}

TEST_CASE("geodesic system: h = 0 scaling invariance and cusp guard") {
    const MassDistribution m(0.4, 0.35, 0.25);
    const ShapePoint p{0.7, 1.2, false};
    const Vec3 tau = Vec3{0.2, -0.4, 0.1};
    const auto a = geodesic_ode_rhs(0.8, p, tau, 1.0, 0.0, m);
    const auto b = geodesic_ode_rhs(0.8, p, tau, 7.3, 0.0, m);
    CHECK(a.dalpha_dsigma == doctest::Approx(b.dalpha_dsigma).epsilon(1e-14));
    CHECK(a.required_curvature == doctest::Approx(b.required_curvature).epsilon(1e-14));
    CHECK_THROWS_AS(geodesic_ode_rhs(1e-14, p, tau, 1.0, 0.0, m), CuspSingularity);
}

TEST_CASE("geodesic system holds along a direct zero-momentum trajectory") {
    const MassDistribution m(0.4, 0.35, 0.25);
    auto g = test_common::rng(13);
    const MTriangle tri = random_planar_triangle(g, m, 8e-2);
    SimState s0;
    for (int i = 0; i < 3; ++i) s0.pos[i] = tri.a(i);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<Vec3, 3> y{};
    Vec3 mom{};
    for (int i = 0; i < 3; ++i) {
        y[i] = {u(g), u(g), 0.0};
        mom += m[i] * y[i];
    }
    for (int i = 0; i < 3; ++i) y[i] -= mom;
    const Vec3 k{0.0, 0.0, 1.0};
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 v = k.cross(s0.pos[i]);
        num += m[i] * v.dot(y[i]);
        den += m[i] * v.norm2();
    }
    for (int i = 0; i < 3; ++i) y[i] -= (num / den) * k.cross(s0.pos[i]);
    double T2 = 0.0;
    for (int i = 0; i < 3; ++i) T2 += m[i] * y[i].norm2();
    const double U0 = newton_potential(s0.triangle(m));
    const double scale = std::sqrt(1.6 * U0 / T2); // h = -0.2 U0 < 0
    for (int i = 0; i < 3; ++i) s0.vel[i] = scale * y[i];
    const double h = total_energy(s0, m);
    REQUIRE(std::abs(angular_momentum(s0, m).norm()) < 1e-12);

    // resample on a uniform grid; all first-order quantities are computed
    // exactly from the state, only second derivatives use finite differences
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-13;
    const double dt = 5e-4;
    const int N = 1200;
    const auto bl = binary_longitudes(m, {});
    std::vector<double> alpha(N), sigdot(N), rho(N);
    std::vector<Vec3> punit(N), pdot(N);
    std::vector<double> sig(N, 0.0);
    SimState cur = s0;
    for (int q = 0; q < N; ++q) {
        if (q > 0) {
            Trajectory seg = integrate_newton(cur, m, 0.0, dt, opt);
            REQUIRE(seg.reason == StopReason::Completed);
            cur = seg.samples.back().state;
        }
        const MTriangle ct = cur.triangle(m);
        const ITriple I = moments(ct);
        const double Itot = I.total();
        const ITriple tn = I.normalized();
        const int orient = ct.signed_area() >= 0 ? +1 : -1;
        const ShapePoint sp = itriple_to_shape(tn, orient, m);
        std::array<double, 3> Idot{};
        for (int i = 0; i < 3; ++i) Idot[i] = 2.0 * m[i] * cur.pos[i].dot(cur.vel[i]);
        // chart rates (exact)
        double rphi[2], rth[2], rr[2];
        for (int i = 0; i < 2; ++i) {
            const double tt = sp.theta - bl[i];
            rphi[i] = m.dual(i) * std::cos(sp.phi) * std::cos(tt);
            rth[i] = -m.dual(i) * std::sin(sp.phi) * std::sin(tt);
            rr[i] = (Idot[i] - I.I(i) / Itot * (Idot[0] + Idot[1] + Idot[2])) / Itot;
        }
        const double det = rphi[0] * rth[1] - rth[0] * rphi[1];
        const double phid = (rth[1] * rr[0] - rth[0] * rr[1]) / det;
        const double thd = (rphi[0] * rr[1] - rphi[1] * rr[0]) / det;
        const double sphi = std::sin(sp.phi), cphi = std::cos(sp.phi);
        const double st = std::sin(sp.theta), ctn = std::cos(sp.theta);
        punit[q] = sp.unit();
        pdot[q] = Vec3{cphi * ctn * phid - sphi * st * thd,
                       cphi * st * phid + sphi * ctn * thd, -sphi * phid};
        rho[q] = ct.rho();
        const double Tbar = kinetic_energy(cur, m); // Omega = 0
        const double rdot = (Idot[0] + Idot[1] + Idot[2]) / (2.0 * rho[q]);
        alpha[q] = std::acos(std::clamp(rdot / std::sqrt(2.0 * Tbar), -1.0, 1.0));
        sigdot[q] = std::sin(alpha[q]) * std::sqrt(2.0 * Tbar) / rho[q];
        if (q > 0) sig[q] = sig[q - 1] + 0.5 * dt * (sigdot[q] + sigdot[q - 1]);
    }
    int checked = 0;
    for (int q = 4; q + 4 < N; q += 17) {
        if (std::sin(alpha[q]) < 0.25 || sigdot[q] < 0.05) continue;
        // 4th-order central differences in t
        const auto d4 = [&](const std::vector<double>& v) {
            return (-v[q + 2] + 8 * v[q + 1] - 8 * v[q - 1] + v[q - 2]) / (12 * dt);
        };
        const double dalpha_dsig = d4(alpha) / sigdot[q];
        Vec3 pddot = (-1.0 * pdot[q + 2] + 8.0 * pdot[q + 1] - 8.0 * pdot[q - 1] +
                      1.0 * pdot[q - 2]) *
                     (1.0 / (12 * dt));
        const double speed = pdot[q].norm();
        const double Kg_unit = triple(punit[q], pdot[q], pddot) / (speed * speed * speed);
        const double Kg_half = 2.0 * Kg_unit;
        const ShapePoint pq = ShapePoint::from_unit(punit[q]);
        const auto eval = geodesic_ode_rhs(alpha[q], pq, pdot[q], rho[q], h, m);
        ++checked;
        CHECK(std::abs(dalpha_dsig - eval.dalpha_dsigma) < 1e-5);
        CHECK(std::abs(Kg_half - eval.required_curvature) <
              1e-5 * std::max(1.0, std::abs(eval.required_curvature)));
    }
    CHECK(checked > 20);
}
#include <doctest.h>

#include <cmath>

#include "shapesphere/dynamics.hpp"
#include "shapesphere/frame.hpp"
#include "shapesphere/presets.hpp"
#include "test_common.hpp"

using namespace shapesphere;

TEST_CASE("spatial kinetic split matches the direct per-body energies") {
    const MassDistribution m = routh_stable_masses();
    Preset ps = preset_spatial_tilt(m);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    opt.ode.h_max = 2e-3;
    const Trajectory traj = integrate_newton(ps.state, m, 0.0, 10.0, opt);
    REQUIRE(traj.reason == StopReason::Completed);
    const Vec3 Omega = angular_momentum(traj.samples.front().state, m);
    Eigenframe frame = eigenframe_of(traj.samples.front().state.triangle(m));
    double worst = 0.0;
    for (size_t k = 0; k < traj.samples.size(); k += 5) {
        const auto& s = traj.samples[k];
        const MTriangle tri = s.state.triangle(m);
        frame = continue_eigenframe(tri, frame);
        const std::array<double, 3> g{Omega.dot(frame.u1), Omega.dot(frame.u2),
                                      Omega.dot(frame.n)};
        const ITriple I = moments(tri);
        std::array<double, 3> Idot{};
        for (int i = 0; i < 3; ++i) Idot[i] = 2.0 * m[i] * s.state.pos[i].dot(s.state.vel[i]);
        const auto split = spatial_kinetic_split(I, Idot, g, +1, m);
        for (int i = 0; i < 3; ++i) {
            const double direct = 0.5 * m[i] * s.state.vel[i].norm2();
            worst = std::max(worst,
                             std::abs(split.tangential[i] + split.normal[i] - direct));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("coupled spatial reduced system shadows the direct projection") {
    const MassDistribution m = routh_stable_masses();
    Preset ps = preset_spatial_tilt(m);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    const double T = 0.25 * ps.t_char;
    const Trajectory direct = integrate_newton(ps.state, m, 0.0, T, opt);
    REQUIRE(direct.reason == StopReason::Completed);
    const Vec3 Omega = angular_momentum(ps.state, m);
    const Eigenframe f0 = eigenframe_of(ps.state.triangle(m));
    const ITriple I0 = moments(ps.state.triangle(m));
    std::array<double, 3> Idot0{};
    for (int i = 0; i < 3; ++i) Idot0[i] = 2.0 * m[i] * ps.state.pos[i].dot(ps.state.vel[i]);
    const std::array<double, 3> g0{Omega.dot(f0.u1), Omega.dot(f0.u2), Omega.dot(f0.n)};
    const auto red = integrate_reduced_spatial(I0, Idot0, g0, +1, m, 0.0, T, opt);
    REQUIRE(red.size() > 10);
    // compare I_i at reduced sample times via Hermite interpolation
    double worst = 0.0;
    size_t j = 0;
    for (const auto& r : red) {
        while (j + 2 < direct.samples.size() && direct.samples[j + 1].t <= r.t) ++j;
        const auto& A = direct.samples[j];
        const auto& B = direct.samples[j + 1];
        const double h = B.t - A.t, uu = (r.t - A.t) / h;
        for (int i = 0; i < 3; ++i) {
            const double pA = moments(A.state.triangle(m)).I(i);
            const double pB = moments(B.state.triangle(m)).I(i);
            const double dA = 2.0 * m[i] * A.state.pos[i].dot(A.state.vel[i]);
            const double dB = 2.0 * m[i] * B.state.pos[i].dot(B.state.vel[i]);
            const double h00 = (1 + 2 * uu) * (1 - uu) * (1 - uu),
                         h10 = uu * (1 - uu) * (1 - uu);
            const double h01 = uu * uu * (3 - 2 * uu), h11 = uu * uu * (uu - 1);
            const double ref = h00 * pA + h10 * h * dA + h01 * pB + h11 * h * dB;
            worst = std::max(worst, std::abs(r.I.I(i) - ref));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("spherical chart refuses evaluation at the pole band") {
    const MassDistribution m(0.5, 0.3, 0.2);
    SphericalState s;
    s.rho = 1.0;
    s.phi = 1e-5;
    s.theta = 0.3;
    CHECK_THROWS_AS(reduced_rhs_spherical(s, -0.1, 0.0, m), PoleChartSingularity);
}

TEST_CASE("geodesic inclination rate at a critical shape point") {
    // tangential and normal derivatives of U* vanish there: the h = 0 rate
    // collapses to the constant -1 + 1/2 on S^2(1/2)
    const MassDistribution m(0.5, 0.3, 0.2);
    const SpecialPoints sp = special_points(m);
    const ShapePoint p = ShapePoint::from_unit(sp.lagrange_north);
    const auto eval = geodesic_ode_rhs(M_PI / 2.0, p, Vec3{0.3, -0.2, 0.5}, 1.0, 0.0, m);
    CHECK(eval.dalpha_dsigma == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(std::abs(eval.required_curvature) < 1e-8);
}
