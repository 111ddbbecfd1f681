#include "shapesphere/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "shapesphere/errors.hpp"
#include "shapesphere/frame.hpp"
#include "shapesphere/kinematics.hpp"
#include "shapesphere/numerics.hpp"
#include "shapesphere/potential.hpp"

namespace shapesphere {

double kinetic_energy(const SimState& s, const MassDistribution& m) {
    double T = 0.0;
    for (int i = 0; i < 3; ++i) T += 0.5 * m[i] * s.vel[i].norm2();
    return T;
}

double total_energy(const SimState& s, const MassDistribution& m) {
    return kinetic_energy(s, m) - newton_potential(s.triangle(m));
}

Vec3 angular_momentum(const SimState& s, const MassDistribution& m) {
    Vec3 om{};
    for (int i = 0; i < 3; ++i) om += m[i] * s.pos[i].cross(s.vel[i]);
    return om;
}

Vec3 center_of_mass(const SimState& s, const MassDistribution& m) {
    Vec3 c{};
    for (int i = 0; i < 3; ++i) c += m[i] * s.pos[i];
    return c;
}

Vec3 linear_momentum(const SimState& s, const MassDistribution& m) {
    Vec3 p{};
    for (int i = 0; i < 3; ++i) p += m[i] * s.vel[i];
    return p;
}

SimState to_com_frame(const SimState& s, const MassDistribution& m) {
    SimState out = s;
    const Vec3 c = center_of_mass(s, m);
    const Vec3 p = linear_momentum(s, m);
    for (int i = 0; i < 3; ++i) {
        out.pos[i] -= c;
        out.vel[i] -= p;
    }
    return out;
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::Completed: return "completed";
        case StopReason::CollisionDetected: return "collision-detected";
        case StopReason::StepUnderflow: return "step-underflow";
        case StopReason::EclipseEncountered: return "eclipse-encountered";
        case StopReason::CuspDetected: return "cusp-detected";
        case StopReason::BinaryCollisionDetected: return "binary-collision-detected";
        case StopReason::MaxStepsReached: return "max-steps-reached";
    }
    return "unknown";
}

namespace {

using State18 = std::array<double, 18>;

State18 pack(const SimState& s) {
    State18 y{};
    for (int i = 0; i < 3; ++i) {
        y[3 * i + 0] = s.pos[i].x;
        y[3 * i + 1] = s.pos[i].y;
        y[3 * i + 2] = s.pos[i].z;
        y[9 + 3 * i + 0] = s.vel[i].x;
        y[9 + 3 * i + 1] = s.vel[i].y;
        y[9 + 3 * i + 2] = s.vel[i].z;
    }
    return y;
}

SimState unpack(const State18& y) {
    SimState s;
    for (int i = 0; i < 3; ++i) {
        s.pos[i] = {y[3 * i], y[3 * i + 1], y[3 * i + 2]};
        s.vel[i] = {y[9 + 3 * i], y[9 + 3 * i + 1], y[9 + 3 * i + 2]};
    }
    return s;
}

double min_pair_distance(const SimState& s) {
    double d = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) d = std::min(d, (s.pos[i] - s.pos[j]).norm());
    return d;
}

} // namespace

Trajectory integrate_newton(const SimState& initial, const MassDistribution& m, double t0,
                            double t1, const NewtonOptions& opt) {
    Trajectory out;
    const SimState start = to_com_frame(initial, m);
    const double h0 = total_energy(start, m);
    const Vec3 om0 = angular_momentum(start, m);
    const double rho0 = std::sqrt(start.triangle(m).I());
    const double collision_r = opt.collision_factor * rho0;

    const auto rhs = [&m](double, const State18& y) -> State18 {
        const SimState s = unpack(y);
        State18 d{};
        for (int i = 0; i < 3; ++i) {
            d[3 * i + 0] = s.vel[i].x;
            d[3 * i + 1] = s.vel[i].y;
            d[3 * i + 2] = s.vel[i].z;
            Vec3 acc{};
            for (int j = 0; j < 3; ++j) {
                if (j == i) continue;
                const Vec3 dr = s.pos[j] - s.pos[i];
                const double r = dr.norm();
                acc += (m[j] / (r * r * r)) * dr;
            }
            d[9 + 3 * i + 0] = acc.x;
            d[9 + 3 * i + 1] = acc.y;
            d[9 + 3 * i + 2] = acc.z;
        }
        return d;
    };

    State18 y = pack(start);
    double t = t0;
    out.samples.push_back({t, start});
    double last_sampled = t0;
    bool stopped = false;

    const auto observer = [&](double tt, const State18& yy) {
        ++out.steps;
        const SimState s = unpack(yy);
        out.energy_drift = std::max(out.energy_drift, std::abs(total_energy(s, m) - h0));
        out.angmom_drift =
            std::max(out.angmom_drift, (angular_momentum(s, m) - om0).norm());
        if (opt.sample_stride <= 0.0 || std::abs(tt - last_sampled) >= opt.sample_stride ||
            tt == t1) {
            out.samples.push_back({tt, s});
            last_sampled = tt;
        }
    };
    const auto stop = [&](double tt, const State18& yy) {
        const SimState s = unpack(yy);
        if (min_pair_distance(s) < collision_r) {
            out.reason = StopReason::CollisionDetected;
            if (out.samples.empty() || out.samples.back().t != tt) out.samples.push_back({tt, s});
            stopped = true;
            return true;
        }
        if (out.steps >= opt.max_steps) {
            out.reason = StopReason::MaxStepsReached;
            stopped = true;
            return true;
        }
        return false;
    };

    try {
        out.t_final = rkf45_integrate<18>(rhs, t, y, t1, opt.ode, observer, stop);
    } catch (const StepUnderflow&) {
        out.reason = StopReason::StepUnderflow;
        out.t_final = t;
        return out;
    }
    if (!stopped) out.reason = StopReason::Completed;
    if (out.samples.back().t != out.t_final) out.samples.push_back({out.t_final, unpack(y)});
    return out;
}

std::array<double, 3> reduced_rhs_planar(const ReducedPlanarState& rs, double omega,
                                         int orientation, const MassDistribution& m) {
    const ITriple& t = rs.I;
    const ModuliVelocity v{rs.Idot[0], rs.Idot[1], rs.Idot[2]};
    const auto s = mutual_distances(t, m); // s[k] = r_{ij}, k opposite
    const auto w = angular_velocities(t, v, omega, orientation, m);

    std::array<double, 3> Idd{};
    for (int i = 0; i < 3; ++i) {
        const double Ti = rs.Idot[i] * rs.Idot[i] / (8.0 * t.I(i)) + 0.5 * w[i] * w[i] * t.I(i);
        const double r_ip1 = s[MassDistribution::mod3(i + 2)]; // r_{i, i+1}
        const double r_ip2 = s[MassDistribution::mod3(i + 1)]; // r_{i, i+2}
        const double c1 = 1.0 / (r_ip1 * r_ip1 * r_ip1);
        const double c2 = 1.0 / (r_ip2 * r_ip2 * r_ip2);
        Idd[i] = 4.0 * Ti - ((m[i] + 2.0 * m[i + 1]) * c1 + (m[i] + 2.0 * m[i + 2]) * c2) * t.I(i) -
                 (c1 - c2) * (m[i + 1] * t.I(i + 1) - m[i + 2] * t.I(i + 2));
    }
    return Idd;
}

ReducedTrajectory integrate_reduced_planar(const ReducedPlanarState& initial, double omega,
                                           int orientation, const MassDistribution& m, double t0,
                                           double t1, const NewtonOptions& opt) {
    using State6 = std::array<double, 6>;
    State6 y{initial.I.I1,    initial.I.I2,    initial.I.I3,
             initial.Idot[0], initial.Idot[1], initial.Idot[2]};
    ReducedTrajectory out;
    const auto rhs = [&](double, const State6& s) -> State6 {
        ReducedPlanarState st;
        st.I = {s[0], s[1], s[2]};
        st.Idot = {s[3], s[4], s[5]};
        const auto dd = reduced_rhs_planar(st, omega, orientation, m);
        return {s[3], s[4], s[5], dd[0], dd[1], dd[2]};
    };
    double t = t0;
    out.samples.push_back({t0, initial});
    const auto observer = [&](double tt, const State6& s) {
        ReducedPlanarState st;
        st.I = {s[0], s[1], s[2]};
        st.Idot = {s[3], s[4], s[5]};
        out.samples.push_back({tt, st});
    };
    try {
        rkf45_integrate<6>(rhs, t, y, t1, opt.ode, observer,
                           [](double, const State6&) { return false; });
    } catch (const StepUnderflow&) {
        out.reason = StopReason::StepUnderflow;
    } catch (const EclipseSingularity&) {
        out.reason = StopReason::EclipseEncountered;
    }
    return out;
}

SpatialKineticSplit spatial_kinetic_split(const ITriple& I, const std::array<double, 3>& Idot,
                                          const std::array<double, 3>& g, int orientation,
                                          const MassDistribution& m) {
    SpatialKineticSplit out;
    const double Itot = I.total();
    const ModuliVelocity v{Idot[0], Idot[1], Idot[2]};
    const auto w0 = angular_velocities_zero(I, v, orientation, m);
    const double Q = I.Q(m);
    const double sinphi = std::sqrt(std::max(1.0 - Q / (m.mbar() * Itot * Itot), 0.0));
    const double lambda1 = 0.5 * Itot * (1.0 - sinphi);
    const double lambda2 = 0.5 * Itot * (1.0 + sinphi);
    const ShapePoint p = itriple_to_shape(I, orientation, m);
    const auto btheta = binary_longitudes(m, {});
    for (int i = 0; i < 3; ++i) {
        const double wi = w0[i] + g[2] / Itot;
        out.tangential[i] = Idot[i] * Idot[i] / (8.0 * I.I(i)) + 0.5 * wi * wi * I.I(i);
        // frame angle of vertex i from the longitude measured at its own
        // collision point, with the branch through the half-angle tangent
        const double tt = std::remainder(p.theta - btheta[i], 2.0 * M_PI);
        const double psi =
            std::atan(std::cos(p.phi) / (1.0 + std::sin(p.phi)) * std::tan(0.5 * tt));
        const double cross = g[0] / lambda1 * std::sin(psi) - g[1] / lambda2 * std::cos(psi);
        out.normal[i] = 0.5 * I.I(i) * cross * cross;
    }
    return out;
}

std::array<double, 3> reduced_rhs_spatial(const ITriple& I, const std::array<double, 3>& Idot,
                                          const std::array<double, 3>& g, int orientation,
                                          const MassDistribution& m) {
    const auto split = spatial_kinetic_split(I, Idot, g, orientation, m);
    const auto s = mutual_distances(I, m);
    std::array<double, 3> Idd{};
    for (int i = 0; i < 3; ++i) {
        const double Ti = split.tangential[i] + split.normal[i];
        const double r_ip1 = s[MassDistribution::mod3(i + 2)];
        const double r_ip2 = s[MassDistribution::mod3(i + 1)];
        const double c1 = 1.0 / (r_ip1 * r_ip1 * r_ip1);
        const double c2 = 1.0 / (r_ip2 * r_ip2 * r_ip2);
        Idd[i] = 4.0 * Ti - ((m[i] + 2.0 * m[i + 1]) * c1 + (m[i] + 2.0 * m[i + 2]) * c2) * I.I(i) -
                 (c1 - c2) * (m[i + 1] * I.I(i + 1) - m[i + 2] * I.I(i + 2));
    }
    return Idd;
}

std::vector<SpatialReducedSample> integrate_reduced_spatial(
    const ITriple& I0, const std::array<double, 3>& Idot0, const std::array<double, 3>& g0,
    int orientation, const MassDistribution& m, double t0, double t1,
    const NewtonOptions& opt) {
    using State9 = std::array<double, 9>;
    State9 y{I0.I1, I0.I2, I0.I3, Idot0[0], Idot0[1], Idot0[2], g0[0], g0[1], g0[2]};
    const auto bl = binary_longitudes(m, {});
    (void)bl;
    const auto rhs = [&](double, const State9& s) -> State9 {
        const ITriple I{s[0], s[1], s[2]};
        const std::array<double, 3> Idot{s[3], s[4], s[5]};
        const std::array<double, 3> g{s[6], s[7], s[8]};
        const auto Idd = reduced_rhs_spatial(I, Idot, g, orientation, m);
        // Euler system coefficients from the moduli data
        const double Itot = I.total();
        const double Q = I.Q(m);
        const double sinphi =
            std::sqrt(std::max(1.0 - Q / (m.mbar() * Itot * Itot), 0.0));
        EulerCoefficients c;
        c.lambda1 = 0.5 * Itot * (1.0 - sinphi);
        c.lambda2 = 0.5 * Itot * (1.0 + sinphi);
        c.lambda3 = Itot;
        const ITriple tn = I.normalized();
        const ShapePoint p = itriple_to_shape(tn, orientation, m);
        const auto btheta = binary_longitudes(m, {});
        double rphi[2], rth[2], rr[2];
        for (int i = 0; i < 2; ++i) {
            const double tt = p.theta - btheta[i];
            rphi[i] = m.dual(i) * std::cos(p.phi) * std::cos(tt);
            rth[i] = -m.dual(i) * std::sin(p.phi) * std::sin(tt);
            rr[i] = (Idot[i] - I.I(i) / Itot * (Idot[0] + Idot[1] + Idot[2])) / Itot;
        }
        const double det = rphi[0] * rth[1] - rth[0] * rphi[1];
        c.theta_dot = (rphi[0] * rr[1] - rphi[1] * rr[0]) / det;
        c.cos_phi = std::cos(p.phi);
        const auto gd = euler_rhs(FrameState{g[0], g[1], g[2], 0.0}, c);
        return {s[3], s[4], s[5], Idd[0], Idd[1], Idd[2], gd[0], gd[1], gd[2]};
    };
    std::vector<SpatialReducedSample> out;
    const auto record = [&](double t, const State9& s) {
        out.push_back({t,
                       ITriple{s[0], s[1], s[2]},
                       {s[3], s[4], s[5]},
                       {s[6], s[7], s[8]}});
    };
    double t = t0;
    record(t, y);
    rkf45_integrate<9>(rhs, t, y, t1, opt.ode,
                       [&](double tt, const State9& s) { record(tt, s); },
                       [](double, const State9&) { return false; });
    return out;
}

std::array<double, 3> reduced_rhs_spherical(const SphericalState& s, double h, double omega,
                                            const MassDistribution& m,
                                            const SphericalOptions& opt) {
    const double sp = std::sin(s.phi);
    if (sp < opt.pole_threshold)
        throw PoleChartSingularity("reduced_rhs_spherical: sin(phi) below threshold");
    PotentialOptions popt;
    popt.convention = opt.convention;
    const PotentialEval u = u_star({s.phi, s.theta, false}, m, popt);
    const double U = u.value / s.rho;
    const double rho2 = s.rho * s.rho;
    const double rho3 = rho2 * s.rho;

    const double rho_dd = -s.rho_dot * s.rho_dot / s.rho + (U + 2.0 * h) / s.rho;
    // the omega terms are the workless Coriolis coupling of the rotational
    // connection; the direct-simulation oracle fixes both signs
    const double phi_dd = -2.0 * s.rho_dot / s.rho * s.phi_dot +
                          0.5 * std::sin(2.0 * s.phi) * s.theta_dot * s.theta_dot +
                          4.0 / rho3 * u.grad_phi -
                          2.0 * omega / rho2 * sp * s.theta_dot;
    const double theta_dd = -2.0 * s.rho_dot / s.rho * s.theta_dot -
                            2.0 * std::cos(s.phi) / sp * s.phi_dot * s.theta_dot +
                            4.0 / (rho3 * sp * sp) * u.grad_theta +
                            2.0 * omega / rho2 * s.phi_dot / sp;
    return {rho_dd, phi_dd, theta_dd};
}

double spherical_energy_residual(const SphericalState& s, double h, double omega,
                                 const MassDistribution& m, const SphericalOptions& opt) {
    PotentialOptions popt;
    popt.convention = opt.convention;
    const PotentialEval u = u_star({s.phi, s.theta, false}, m, popt);
    const double U = u.value / s.rho;
    const double sp = std::sin(s.phi);
    const double lhs = U + h - omega * omega / (2.0 * s.rho * s.rho);
    const double rhs = 0.5 * s.rho_dot * s.rho_dot +
                       s.rho * s.rho / 8.0 *
                           (s.phi_dot * s.phi_dot + sp * sp * s.theta_dot * s.theta_dot);
    return lhs - rhs;
}

std::vector<SphericalTrajectorySample> integrate_reduced_spherical(
    const SphericalState& initial, double h, double omega, const MassDistribution& m, double t0,
    double t1, const NewtonOptions& oopt, const SphericalOptions& sopt) {
    using State6 = std::array<double, 6>;
    std::vector<SphericalTrajectorySample> out;
    out.push_back({t0, initial});

    State6 y{initial.rho,     initial.phi,     initial.theta,
             initial.rho_dot, initial.phi_dot, initial.theta_dot};
    double t = t0;

    const auto full_rhs = [&](double, const State6& s) -> State6 {
        SphericalState st{s[0], s[1], s[2], s[3], s[4], s[5]};
        const auto dd = reduced_rhs_spherical(st, h, omega, m, sopt);
        return {s[3], s[4], s[5], dd[0], dd[1], dd[2]};
    };

    while (t < t1) {
        if (std::sin(y[1]) >= sopt.pole_threshold) {
            const auto observer = [&](double tt, const State6& s) {
                out.push_back({tt, SphericalState{s[0], s[1], s[2], s[3], s[4], s[5]}});
            };
            const auto stop = [&](double, const State6& s) {
                return std::sin(s[1]) < sopt.pole_threshold;
            };
            t = rkf45_integrate<6>(full_rhs, t, y, t1, oopt.ode, observer, stop);
            if (t >= t1) break;
        }
        // pole band: drop the longitude ODE; recover theta_dot from the energy integral
        double sign_td = (y[5] >= 0.0) ? 1.0 : -1.0;
        const double dt = std::max(oopt.ode.h_init, 1e-6);
        while (t < t1 && std::sin(y[1]) < sopt.pole_threshold) {
            using State5 = std::array<double, 5>;
            State5 z{y[0], y[1], y[2], y[3], y[4]};
            const auto band_rhs = [&](double, const State5& s) -> State5 {
                SphericalState st{s[0], s[1], s[2], s[3], s[4], 0.0};
                PotentialOptions popt;
                popt.convention = sopt.convention;
                const PotentialEval u = u_star({st.phi, st.theta, false}, m, popt);
                const double U = u.value / st.rho;
                const double sp = std::sin(st.phi);
                const double q =
                    8.0 *
                        (U + h - omega * omega / (2.0 * st.rho * st.rho) -
                         0.5 * st.rho_dot * st.rho_dot) /
                        (st.rho * st.rho) -
                    st.phi_dot * st.phi_dot;
                const double td = sign_td * std::sqrt(std::max(q, 0.0)) / std::max(sp, 1e-12);
                const double rho3 = st.rho * st.rho * st.rho;
                const double rho_dd = -st.rho_dot * st.rho_dot / st.rho + (U + 2.0 * h) / st.rho;
                const double phi_dd = -2.0 * st.rho_dot / st.rho * st.phi_dot +
                                      0.5 * std::sin(2.0 * st.phi) * td * td +
                                      4.0 / rho3 * u.grad_phi -
                                      2.0 * omega / (st.rho * st.rho) * sp * td;
                return {st.rho_dot, st.phi_dot, td, rho_dd, phi_dd};
            };
            const double step = std::min(dt, t1 - t);
            z = rk4_step(band_rhs, t, z, step);
            t += step;
            const auto d = band_rhs(t, z);
            y = {z[0], z[1], z[2], z[3], z[4], d[2]};
            out.push_back({t, SphericalState{y[0], y[1], y[2], y[3], y[4], y[5]}});
        }
    }
    return out;
}

RayLength ray_length(const ShapePoint& p, double h, const MassDistribution& m) {
    RayLength out;
    if (h >= 0.0) {
        out.finite = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const double ustar = u_star(p, m).value;
    const double R = ustar / std::abs(h);
    const double ah = std::abs(h);
    const double vmax = std::sqrt(R / 2.0);
    // rho = v^2 near the vertex, rho = R - w^2 near the boundary
    const double leg1 = integrate_gl5(
        [&](double v) { return 2.0 * std::sqrt(ustar + h * v * v); }, 0.0, vmax, 64);
    const double leg2 = integrate_gl5(
        [&](double w) { return 2.0 * std::sqrt(ah) * w * w / std::sqrt(R - w * w); }, 0.0, vmax,
        64);
    out.value = leg1 + leg2;
    return out;
}

double ray_length_closed_form(const ShapePoint& p, double h, const MassDistribution& m) {
    if (h >= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * M_PI * u_star(p, m).value / std::sqrt(std::abs(h));
}

GeodesicOdeEval geodesic_ode_rhs(double alpha, const ShapePoint& p, const Vec3& tau_hat,
                                 double rho, double h, const MassDistribution& m,
                                 double sin_alpha_tol) {
    const double sa = std::sin(alpha);
    if (std::abs(sa) < sin_alpha_tol)
        throw CuspSingularity("geodesic_ode_rhs: sin(alpha) ~ 0");
    const Vec3 pu = p.unit();
    Vec3 tau = tau_hat - tau_hat.dot(pu) * pu;
    tau = tau.normalized();
    const Vec3 nu = pu.cross(tau);

    const double u = u_star(p, m).value;
    const Vec3 grad = u_star_gradient_vector(pu, m);
    // derivatives of ln U* per unit length on S^2(1/2) are twice the unit-sphere ones
    const double dtau = 2.0 * grad.dot(tau) / u;
    const double dnu = 2.0 * grad.dot(nu) / u;
    const double factor = 0.5 * u / (u + h * rho);

    GeodesicOdeEval out;
    out.dalpha_dsigma = -1.0 + factor * (1.0 + (std::cos(alpha) / sa) * dtau);
    out.required_curvature = factor * dnu / (sa * sa);
    return out;
}

} // namespace shapesphere
