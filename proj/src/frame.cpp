#include "shapesphere/frame.hpp"

#include <algorithm>
#include <cmath>

#include "shapesphere/errors.hpp"
#include "shapesphere/kinematics.hpp"
#include "shapesphere/ode.hpp"

namespace shapesphere {

std::array<std::array<double, 3>, 3> inertia_tensor(const MTriangle& tri) {
    // B = |X|^2 Id - A D A^t with columns a_i of A and D = diag(m)
    std::array<std::array<double, 3>, 3> B{};
    const double I = tri.I();
    const auto& m = tri.masses();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double adda = 0.0;
            for (int i = 0; i < 3; ++i) {
                const Vec3& a = tri.a(i);
                const double ar = (r == 0 ? a.x : r == 1 ? a.y : a.z);
                const double ac = (c == 0 ? a.x : c == 1 ? a.y : a.z);
                adda += m[i] * ar * ac;
            }
            B[r][c] = (r == c ? I : 0.0) - adda;
        }
    return B;
}

EigenData inertia_eigen(const MTriangle& tri) {
    const auto& m = tri.masses();
    const double I = tri.I();
    const double delta = tri.signed_area();
    const double disc = std::max(I * I - 16.0 * m.mbar() * delta * delta, 0.0);
    EigenData e;
    e.lambda1 = 0.5 * (I - std::sqrt(disc));
    e.lambda2 = 0.5 * (I + std::sqrt(disc));
    e.lambda3 = I;

    const double I1 = m[0] * tri.a(0).norm2();
    if (I1 == 0.0) {
        e.psi1 = 0.0; // a1 at the origin, frame angle unconstrained
        return e;
    }
    // Gram-Schmidt frame values are orientation invariant: use |Delta|
    const double adelta = std::abs(delta);
    const double A = 4.0 * m.mbar() * (m[1] + m[2]) * adelta * adelta / I1;
    const double C3 = moments(tri).C(2, m);
    const double B = ((m[1] + m[2]) * C3 - 2.0 * m[0] * m[1] * I1) * adelta / I1;
    const double C = I - A;
    if (B == 0.0) {
        e.psi1 = (A > C) ? -M_PI / 2.0 : 0.0; // pi/2 wrapped into [-pi/2, pi/2)
        return e;
    }
    double psi = 0.5 * std::atan2(2.0 * B, A - C); // in (-pi/2, pi/2]
    // branch rule: sin(2 psi1) must have the opposite sign of B
    if (std::sin(2.0 * psi) * B > 0.0) psi += (psi > 0 ? -M_PI / 2.0 : M_PI / 2.0);
    if (psi >= M_PI / 2.0) psi -= M_PI;
    e.psi1 = psi;
    return e;
}

std::array<double, 3> euler_rhs(const FrameState& g, const EulerCoefficients& c) {
    // The sign of the shape-twist term is pinned by the direct-simulation
    // oracle (eastward longitude, u1 on the small axis, right-handed frame):
    // a 4th-order finite-difference check of g(t) along a generic non-planar
    // trajectory matches this sign to machine precision and rejects the
    // opposite one.
    const double twist = 0.5 * c.theta_dot * c.cos_phi;
    return {
        g.g2 * ((1.0 / c.lambda3 - 1.0 / c.lambda2) * g.g3 - twist),
        g.g1 * ((1.0 / c.lambda1 - 1.0 / c.lambda3) * g.g3 + twist),
        g.g1 * g.g2 * (1.0 / c.lambda2 - 1.0 / c.lambda1),
    };
}

double precession_rate(const FrameState& g, double lambda1, double lambda2, double omega_mag,
                       double planar_tol) {
    const double perp2 = g.g1 * g.g1 + g.g2 * g.g2;
    if (perp2 <= planar_tol * std::max(g.norm2(), omega_mag * omega_mag))
        throw PlanarUndefined("precession_rate: motion is planar");
    return omega_mag / perp2 * (g.g1 * g.g1 / lambda1 + g.g2 * g.g2 / lambda2);
}

EulerIntegrationResult integrate_euler(const EulerCoefficientFn& coeffs, double omega_mag,
                                       const FrameState& g0, double t0, double t1,
                                       const EulerIntegrationOptions& opt) {
    EulerIntegrationResult out;
    std::array<double, 4> y{g0.g1, g0.g2, g0.g3, g0.chi};
    double t = t0;
    const double dt = (t1 >= t0) ? opt.dt : -opt.dt;
    const auto rhs = [&](double tt, const std::array<double, 4>& s) -> std::array<double, 4> {
        const EulerCoefficients c = coeffs(tt);
        FrameState gs{s[0], s[1], s[2], s[3]};
        const auto dg = euler_rhs(gs, c);
        double dchi = 0.0;
        if (opt.track_precession) {
            const double perp2 = s[0] * s[0] + s[1] * s[1];
            if (perp2 > opt.planar_tol * std::max(gs.norm2(), omega_mag * omega_mag))
                dchi = precession_rate(gs, c.lambda1, c.lambda2, omega_mag, opt.planar_tol);
        }
        return {dg[0], dg[1], dg[2], dchi};
    };

    out.samples.push_back({t, g0});
    while ((dt > 0 && t < t1 - 0.5 * std::abs(dt)) || (dt < 0 && t > t1 + 0.5 * std::abs(dt))) {
        const EulerCoefficients c = coeffs(t);
        if (c.lambda1 <= opt.eclipse_tol * c.lambda3) {
            out.eclipse_encountered = true;
            break;
        }
        double step = dt;
        if ((dt > 0 && t + step > t1) || (dt < 0 && t + step < t1)) step = t1 - t;
        y = rk4_step(rhs, t, y, step);
        t += step;
        out.samples.push_back({t, FrameState{y[0], y[1], y[2], y[3]}});
    }
    out.t_stop = t;
    return out;
}

PlanarModuliFn hermite_moduli_curve(std::vector<double> t, std::vector<ITriple> I,
                                    std::vector<ITriple> Idot) {
    if (t.size() < 2 || t.size() != I.size() || t.size() != Idot.size())
        throw NumericalError("hermite_moduli_curve: inconsistent sample arrays");
    return [t = std::move(t), I = std::move(I),
            Idot = std::move(Idot)](double tq) -> PlanarModuliSample {
        auto it = std::upper_bound(t.begin(), t.end(), tq);
        size_t k = (it == t.begin()) ? 0 : static_cast<size_t>(it - t.begin()) - 1;
        if (k + 1 >= t.size()) k = t.size() - 2;
        const double h = t[k + 1] - t[k];
        const double s = (tq - t[k]) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        const double d00 = 6 * s * (s - 1) / h;
        const double d10 = (1 - s) * (1 - 3 * s);
        const double d01 = -6 * s * (s - 1) / h;
        const double d11 = s * (3 * s - 2);
        PlanarModuliSample out;
        double* vals[3] = {&out.I.I1, &out.I.I2, &out.I.I3};
        double* ders[3] = {&out.Idot.I1, &out.Idot.I2, &out.Idot.I3};
        for (int c = 0; c < 3; ++c) {
            const double p0 = I[k].I(c), p1 = I[k + 1].I(c);
            const double m0 = Idot[k].I(c), m1 = Idot[k + 1].I(c);
            *vals[c] = h00 * p0 + h10 * h * m0 + h01 * p1 + h11 * h * m1;
            *ders[c] = d00 * p0 + d10 * m0 + d01 * p1 + d11 * m1;
        }
        return out;
    };
}

Eigenframe eigenframe_of(const MTriangle& tri) {
    Eigenframe f;
    f.n = tri.normal();
    // in-plane seed direction from the largest position vector
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (tri.a(i).norm2() > tri.a(best).norm2()) best = i;
    Vec3 e1 = tri.a(best) - tri.a(best).dot(f.n) * f.n;
    e1 = e1.normalized();
    const Vec3 e2 = f.n.cross(e1);
    const auto B = inertia_tensor(tri);
    const auto quad = [&](const Vec3& u, const Vec3& v) {
        double acc = 0.0;
        const double uu[3] = {u.x, u.y, u.z}, vv[3] = {v.x, v.y, v.z};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) acc += uu[r] * B[r][c] * vv[c];
        return acc;
    };
    const double A = quad(e1, e1), Bv = quad(e1, e2), C = quad(e2, e2);
    const double ang = 0.5 * std::atan2(2.0 * Bv, A - C);
    Vec3 cand1 = std::cos(ang) * e1 + std::sin(ang) * e2;
    Vec3 cand2 = -std::sin(ang) * e1 + std::cos(ang) * e2;
    if (quad(cand1, cand1) <= quad(cand2, cand2)) {
        f.u1 = cand1;
    } else {
        f.u1 = cand2;
    }
    f.u2 = f.n.cross(f.u1);
    return f;
}

Eigenframe continue_eigenframe(const MTriangle& tri, const Eigenframe& prev) {
    Eigenframe f = eigenframe_of(tri);
    if (f.n.dot(prev.n) < 0) {
        f.n = -f.n;
        f.u2 = -f.u2;
    }
    if (f.u1.dot(prev.u1) < 0) {
        f.u1 = -f.u1;
        f.u2 = -f.u2;
    }
    return f;
}

std::vector<LiftSample> lift_planar(const PlanarModuliFn& curve, double omega,
                                    const MTriangle& initial, double t0, double t1,
                                    const LiftOptions& opt) {
    const auto& m = initial.masses();
    const PlanarModuliSample start = curve(t0);
    const ITriple proj = moments(initial);
    const double scale = std::max(start.I.total(), 1e-300);
    for (int i = 0; i < 3; ++i) {
        if (std::abs(proj.I(i) - start.I.I(i)) > opt.projection_tol * scale)
            throw ProjectionMismatch("lift_planar: initial configuration off the curve start");
    }
    const double I0 = start.I.total();
    if (start.I.Q(m) < opt.collinear_tol * I0 * I0)
        throw EclipseAmbiguity("lift_planar: collinear initial configuration");

    const int orientation = initial.signed_area() >= 0 ? +1 : -1;

    // vertex angles evolve with the individual angular velocities
    std::array<double, 3> angle{};
    for (int i = 0; i < 3; ++i) angle[i] = std::atan2(initial.a(i).y, initial.a(i).x);

    const auto rhs = [&](double t, const std::array<double, 3>& y) -> std::array<double, 3> {
        (void)y;
        const PlanarModuliSample s = curve(t);
        const ModuliVelocity v{s.Idot.I1, s.Idot.I2, s.Idot.I3};
        return angular_velocities(s.I, v, omega, orientation, m);
    };

    std::vector<LiftSample> out;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / opt.dt)));
    const double h = (t1 - t0) / nsteps;
    double t = t0;
    const auto emit = [&](double tt, const std::array<double, 3>& ang) {
        const PlanarModuliSample s = curve(tt);
        LiftSample ls;
        ls.t = tt;
        for (int i = 0; i < 3; ++i) {
            const double r = std::sqrt(std::max(s.I.I(i), 0.0) / m[i]);
            ls.positions[i] = {r * std::cos(ang[i]), r * std::sin(ang[i]), 0.0};
        }
        out.push_back(ls);
    };
    emit(t, angle);
    for (int k = 0; k < nsteps; ++k) {
        angle = rk4_step(rhs, t, angle, h);
        t = t0 + (k + 1) * h;
        emit(t, angle);
    }
    return out;
}

} // namespace shapesphere
