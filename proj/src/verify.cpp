#include "shapesphere/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "shapesphere/batch.hpp"
#include "shapesphere/collision.hpp"
#include "shapesphere/config.hpp"
#include "shapesphere/dynamics.hpp"
#include "shapesphere/frame.hpp"
#include "shapesphere/kinematics.hpp"
#include "shapesphere/numerics.hpp"
#include "shapesphere/potential.hpp"
#include "shapesphere/presets.hpp"
#include "shapesphere/shape.hpp"

namespace shapesphere {

namespace {

using Clock = std::chrono::steady_clock;

MassDistribution random_masses(std::mt19937_64& g, double floor = 0.08) {
    std::uniform_real_distribution<double> u(floor, 1.0);
    return {u(g), u(g), u(g)};
}

struct Check {
    double worst = 0.0;
    bool pass = true;

    void update(double err, double tol) {
        worst = std::max(worst, err);
        if (!(err <= tol)) pass = false;
    }
};

std::array<double, 3> moment_rates(const SimState& s, const MassDistribution& m) {
    return {2.0 * m[0] * s.pos[0].dot(s.vel[0]), 2.0 * m[1] * s.pos[1].dot(s.vel[1]),
            2.0 * m[2] * s.pos[2].dot(s.vel[2])};
}

// ---------------------------------------------------------------- criterion 1
CriterionResult metric_isometry(std::uint64_t seed) {
    CriterionResult r;
    r.name = "metric-isometry";
    r.tolerance = 1e-8;
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.1, M_PI / 2.0 - 0.05);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    Check c;
    int done = 0;
    while (done < 1000) {
        const MassDistribution m = random_masses(g);
        const ShapePoint p{uphi(g), uth(g), false};
        const ITriple t = shape_to_itriple(p, m);
        const double dI1 = u(g), dI2 = u(g);
        double direct, pullback;
        try {
            direct = dsigma2_coordinates(t.I1, t.I2, dI1, dI2, m);
            pullback = dsigma2_sphere_pullback(t.I1, t.I2, dI1, dI2, m);
        } catch (const EclipseSingularity&) {
            continue;
        }
        ++done;
        c.update(std::abs(direct - pullback) / std::abs(pullback), 1e-8);
    }
    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "1000 random (masses, tangent) pairs vs the sphere pullback";
    return r;
}

// ---------------------------------------------------------------- criterion 2
CriterionResult gauss_bonnet(std::uint64_t seed) {
    CriterionResult r;
    r.name = "gauss-bonnet";
    r.tolerance = 1e-6;
    std::mt19937_64 g(seed + 1);
    std::uniform_real_distribution<double> uphi(0.15, 1.15);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    Check c;
    for (int rep = 0; rep < 100; ++rep) {
        const MassDistribution m = random_masses(g, 0.12);
        std::vector<Vec3> v;
        for (int k = 0; k < 3; ++k) v.push_back(ShapePoint{uphi(g), uth(g), false}.unit());
        v.push_back(v.front());
        PathIntegralOptions opt;
        opt.segments = 192;
        const auto vals = one_form_integrals_polyline(v, m, opt);
        const double area = spherical_polygon_area_half_sphere(v);
        for (int i = 0; i < 3; ++i) c.update(std::abs(vals[i] - 2.0 * area), 1e-6);
    }
    // the pole triangle with both equator feet inside one clean gap
    {
        const MassDistribution m(0.45, 0.3, 0.25);
        const auto bl = binary_longitudes(m, {});
        std::vector<double> walls;
        for (int i = 0; i < 3; ++i) {
            walls.push_back(std::fmod(bl[i], 2.0 * M_PI));
            walls.push_back(std::fmod(bl[i] + M_PI, 2.0 * M_PI));
        }
        std::sort(walls.begin(), walls.end());
        double lo = 0, width = 0;
        for (size_t k = 0; k < walls.size(); ++k) {
            const double a = walls[k];
            const double b = (k + 1 < walls.size()) ? walls[k + 1] : walls[0] + 2.0 * M_PI;
            if (b - a > width) {
                width = b - a;
                lo = a;
            }
        }
        const double ta = lo + 0.25 * width, tb = lo + 0.75 * width;
        PathIntegralOptions opt;
        opt.segments = 400;
        opt.eclipse_tol = 1e-13;
        const Vec3 pole{0, 0, 1};
        const Vec3 ea{std::cos(ta), std::sin(ta), 0.0}, eb{std::cos(tb), std::sin(tb), 0.0};
        const auto down = one_form_integrals(geodesic_polyline({pole, ea}), m, opt);
        const auto up = one_form_integrals(geodesic_polyline({eb, pole}), m, opt);
        for (int i = 0; i < 3; ++i)
            c.update(std::abs(down[i] + up[i] - 0.5 * (tb - ta)), 1e-8);
    }
    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "100 random loops vs twice the enclosed area; pole triangle at 1e-8";
    return r;
}

// ---------------------------------------------------------------- criterion 3
CriterionResult euler_reconstruction(std::uint64_t) {
    CriterionResult r;
    r.name = "euler-reconstruction";
    r.tolerance = 1e-5;
    const MassDistribution m = routh_stable_masses();
    Preset ps = preset_spatial_tilt(m);
    NewtonOptions nopt;
    nopt.ode.h_max = 2e-3;
    nopt.ode.abs_tol = nopt.ode.rel_tol = 1e-12;
    const double T = ps.t_char; // one characteristic time (orbital period)
    const Trajectory traj = integrate_newton(ps.state, m, 0.0, T, nopt);
    if (traj.reason != StopReason::Completed) {
        r.detail = "direct integration did not complete";
        return r;
    }
    const Vec3 Omega = angular_momentum(traj.samples.front().state, m);
    const double om = Omega.norm();
    const Vec3 khat = Omega / om;
    Vec3 e1{1, 0, 0};
    e1 = (e1 - e1.dot(khat) * khat).normalized();
    const Vec3 e2 = khat.cross(e1);

    std::vector<double> ts;
    std::vector<ITriple> Is, Ids;
    for (const auto& s : traj.samples) {
        ts.push_back(s.t);
        Is.push_back(moments(s.state.triangle(m)));
        const auto d = moment_rates(s.state, m);
        Ids.push_back({d[0], d[1], d[2]});
    }
    const auto curve = hermite_moduli_curve(ts, Is, Ids);
    const auto bl = binary_longitudes(m, {});
    const auto coeffs = [&](double t) -> EulerCoefficients {
        const PlanarModuliSample s = curve(t);
        const double I = s.I.total();
        const ITriple tn = s.I.normalized();
        const double Q = tn.Q(m);
        const double sp = std::sqrt(std::max(1.0 - Q / m.mbar(), 0.0));
        EulerCoefficients c;
        c.lambda1 = 0.5 * I * (1.0 - sp);
        c.lambda2 = 0.5 * I * (1.0 + sp);
        c.lambda3 = I;
        const ShapePoint p = itriple_to_shape(tn, +1, m);
        double rphi[2], rth[2], rr[2];
        for (int i = 0; i < 2; ++i) {
            const double tt = p.theta - bl[i];
            rphi[i] = m.dual(i) * std::cos(p.phi) * std::cos(tt);
            rth[i] = -m.dual(i) * sp * std::sin(tt);
            rr[i] = (s.Idot.I(i) - s.I.I(i) / I * s.Idot.total()) / I;
        }
        const double det = rphi[0] * rth[1] - rth[0] * rphi[1];
        c.theta_dot = (rphi[0] * rr[1] - rphi[1] * rr[0]) / det;
        c.cos_phi = std::cos(p.phi);
        return c;
    };

    const MTriangle tri0 = traj.samples.front().state.triangle(m);
    const Eigenframe frame0 = eigenframe_of(tri0);
    FrameState g0{Omega.dot(frame0.u1), Omega.dot(frame0.u2), Omega.dot(frame0.n), 0.0};
    g0.chi = std::atan2(frame0.n.dot(e2), frame0.n.dot(e1));

    EulerIntegrationOptions eopt;
    eopt.dt = 2e-4;
    const auto res = integrate_euler(coeffs, om, g0, 0.0, T, eopt);
    if (res.eclipse_encountered) {
        r.detail = "unexpected eclipse along the test motion";
        return r;
    }

    // anchor the frame angle of vertex 1 at t0
    const auto psi_formula = [&](const ShapePoint& p) {
        const double tt = std::remainder(p.theta - bl[0], 2.0 * M_PI);
        return std::atan(std::cos(p.phi) / (1.0 + std::sin(p.phi)) * std::tan(0.5 * tt));
    };
    const ShapePoint p0 = itriple_to_shape(Is.front().normalized(), +1, m);
    const Vec3 a0 = tri0.a(0);
    const double psi_offset =
        std::atan2(a0.dot(frame0.u2), a0.dot(frame0.u1)) - psi_formula(p0);

    const auto euler_at = [&](double tq) -> FrameState {
        size_t k = static_cast<size_t>((tq - res.samples.front().t) / eopt.dt);
        if (k + 1 >= res.samples.size()) k = res.samples.size() - 2;
        const auto& A = res.samples[k];
        const auto& B = res.samples[k + 1];
        const double u = (tq - A.t) / (B.t - A.t);
        return {A.state.g1 + u * (B.state.g1 - A.state.g1),
                A.state.g2 + u * (B.state.g2 - A.state.g2),
                A.state.g3 + u * (B.state.g3 - A.state.g3),
                A.state.chi + u * (B.state.chi - A.state.chi)};
    };

    Check pos_check, norm_check;
    for (const auto& smp : traj.samples) {
        if (smp.t > res.samples.back().t) break;
        const FrameState gs = euler_at(smp.t);
        norm_check.update(std::abs(gs.norm2() - om * om), 1e-8 * om * om);
        const double cosPhi = gs.g3 / om;
        const double sinPhi = std::sqrt(std::max(1.0 - cosPhi * cosPhi, 0.0));
        const Vec3 n =
            cosPhi * khat + sinPhi * (std::cos(gs.chi) * e1 + std::sin(gs.chi) * e2);
        Vec3 mhat = khat - cosPhi * n;
        mhat = mhat / std::max(mhat.norm(), 1e-300);
        const double mu = std::atan2(-gs.g2, gs.g1);
        const Vec3 u1 = std::cos(mu) * mhat + std::sin(mu) * n.cross(mhat);
        const Vec3 u2 = n.cross(u1);
        const PlanarModuliSample s = curve(smp.t);
        const ITriple tn = s.I.normalized();
        const ShapePoint p = itriple_to_shape(tn, +1, m);
        const double eta1 = psi_formula(p) + psi_offset;
        const auto central = [&](int k2) {
            const int i = MassDistribution::mod3(k2 + 1), j = MassDistribution::mod3(k2 + 2);
            const double denom = 2.0 * std::sqrt(m[i] * m[j] * tn.I(i) * tn.I(j));
            return std::acos(std::clamp(-tn.C(k2, m) / denom, -1.0, 1.0));
        };
        const double eta[3] = {eta1, eta1 + central(2), eta1 + central(2) + central(0)};
        const double I = s.I.total();
        for (int i = 0; i < 3; ++i) {
            const double rr = std::sqrt(I * tn.I(i) / m[i]);
            const Vec3 rec = rr * (std::cos(eta[i]) * u1 + std::sin(eta[i]) * u2);
            pos_check.update((rec - smp.state.pos[i]).norm(), 1e-5);
        }
    }
    r.pass = pos_check.pass && norm_check.pass;
    r.worst = pos_check.worst;
    r.detail = "positions from (g, chi) over one period; |g|^2 drift " +
               std::to_string(norm_check.worst / (om * om)) + " of Omega^2";
    return r;
}

// ---------------------------------------------------------------- criterion 4
CriterionResult reduction_fidelity(std::uint64_t) {
    CriterionResult r;
    r.name = "reduction-fidelity";
    r.tolerance = 1e-5;
    const MassDistribution m(0.97, 0.02, 0.01);
    Preset ps = preset_perturbed_lagrange(m, 1e-2);
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
    const double T = 10.0 * ps.t_char;
    const Trajectory direct = integrate_newton(ps.state, m, 0.0, T, opt);
    if (direct.reason != StopReason::Completed) {
        r.detail = "direct run failed";
        return r;
    }
    ReducedPlanarState rs;
    rs.I = moments(ps.state.triangle(m));
    rs.Idot = moment_rates(ps.state, m);
    const ReducedTrajectory reduced =
        integrate_reduced_planar(rs, ps.omega, +1, m, 0.0, T, opt);
    if (reduced.reason != StopReason::Completed) {
        r.detail = "reduced run failed";
        return r;
    }
    Check c;
    size_t j = 0;
    for (const auto& red : reduced.samples) {
        while (j + 2 < direct.samples.size() && direct.samples[j + 1].t <= red.t) ++j;
        const auto& A = direct.samples[j];
        const auto& B = direct.samples[j + 1];
        const double h = B.t - A.t, uu = (red.t - A.t) / h;
        const ITriple IA = moments(A.state.triangle(m));
        const ITriple IB = moments(B.state.triangle(m));
        const auto dA = moment_rates(A.state, m);
        const auto dB = moment_rates(B.state, m);
        for (int i = 0; i < 3; ++i) {
            const double h00 = (1 + 2 * uu) * (1 - uu) * (1 - uu),
                         h10 = uu * (1 - uu) * (1 - uu);
            const double h01 = uu * uu * (3 - 2 * uu), h11 = uu * uu * (uu - 1);
            const double ref =
                h00 * IA.I(i) + h10 * h * dA[i] + h01 * IB.I(i) + h11 * h * dB[i];
            c.update(std::abs(red.state.I.I(i) - ref), 1e-5);
        }
    }
    Check lj;
    for (size_t k = 0; k < direct.samples.size(); k += 7) {
        const auto& smp = direct.samples[k];
        ReducedPlanarState st;
        st.I = moments(smp.state.triangle(m));
        st.Idot = moment_rates(smp.state, m);
        const auto Idd = reduced_rhs_planar(st, ps.omega, +1, m);
        const double Tk = kinetic_energy(smp.state, m);
        const double U = newton_potential(smp.state.triangle(m));
        lj.update(std::abs(Idd[0] + Idd[1] + Idd[2] - (4.0 * Tk - 2.0 * U)), 1e-7);
    }
    r.pass = c.pass && lj.pass;
    r.worst = c.worst;
    r.detail = "sup-norm over 10 characteristic times; Lagrange-Jacobi residual " +
               std::to_string(lj.worst);
    return r;
}

// ---------------------------------------------------------------- criterion 5
// Excluded cells: (k=7, 63pi/128) is illegible in the source; (k=6, 63pi/128)
// prints 1.2247 but theta and theta' at the same node match us to 2e-5 and the
// column progression pins 1.2447 - a single-digit misprint.
constexpr double kIllegible = TableGolden::illegible;

struct GoldenTables {
    std::vector<std::vector<double>> alpha{
        {.1947, .2292, .2072, .1926, .1883, .1871},
        {.2132, .3470, .5938, .7243, .7705, .7835},
        {.2464, .4554, .7917, .9694, 1.0379, 1.0586},
        {.2742, .5170, .8895, 1.0914, 1.1747, 1.2014},
        {.2943, .5542, .9465, 1.1643, 1.2597, 1.2922},
        {.3083, .5780, .9827, 1.2121, 1.3179, 1.3566},
        {.3181, .5938, 1.0067, kIllegible, 1.3599, 1.4054},
        {.3248, .6043, 1.0226, kIllegible, 1.3904, 1.4433},
        {.3292, .6110, 1.0328, 1.2816, 1.4116, 1.4723},
        {.3317, .6147, 1.0385, 1.2898, 1.4243, 1.4917},
        {.3325, .6159, 1.0403, 1.2925, 1.4285, 1.4989}};
    std::vector<std::vector<double>> theta{
        {0, 0, 0, 0, 0, 0},
        {.23558, .40978, .66916, .77595, .80954, .81866},
        {.42158, .61693, .83930, .92403, .95180, .95968},
        {.55924, .73215, .90859, .97447, .99697, 1.0037},
        {.66448, .80830, .94747, .99907, 1.0173, 1.0231},
        {.74914, .86481, .97349, 1.0137, 1.0283, 1.0333},
        {.82059, .91025, .99302, 1.0236, 1.0350, 1.0391},
        {.88344, .94901, 1.0089, 1.0310, 1.0394, 1.0426},
        {.94075, .98370, 1.0226, 1.0370, 1.0425, 1.0448},
        {.99475, 1.0160, 1.0352, 1.0423, 1.0450, 1.0462},
        {1.0472, 1.0472, 1.0472, 1.0472, 1.0472, 1.0472}};
    std::vector<std::vector<double>> theta_p{
        {0, 0, 0, 0, 0, 0},
        {.29933, .63143, 1.2517, 1.7182, 1.9466, 2.0210},
        {.40322, .60768, .99427, 1.3887, 1.6602, 1.7708},
        {.39183, .50135, .76959, 1.0998, 1.3930, 1.5427},
        {.34216, .40251, .60029, .87390, 1.1710, 1.3623},
        {.28289, .31737, .46599, .68801, .97142, 1.2023},
        {.22295, .24306, .35361, .52754, .78004, 1.0406},
        {.16476, .17645, .25526, .38365, .58941, .85626},
        {.10857, .11502, .16580, .25043, .39595, .62716},
        {.05389, .05675, .08166, .12369, .19908, .33781},
        {0, 0, 0, 0, 0, 0}};
};


CriterionResult table_reproduction(std::uint64_t, bool inject_fault) {
    CriterionResult r;
    r.name = "table-reproduction";
    r.tolerance = 5e-4;
    const auto t0 = Clock::now();
    GoldenTables golden;
    if (inject_fault) golden.alpha[10][0] += 0.01; // negative control
    std::vector<double> theta0;
    for (int k = 0; k <= 10; ++k) theta0.push_back(k * M_PI / 30.0);
    const auto sweep =
        collision::sweep_tables(theta0, collision::table_columns(), env_thread_count());
    Check c;
    int cells = 0;
    for (size_t row = 0; row < theta0.size(); ++row) {
        for (size_t col = 0; col < sweep.columns.size(); ++col) {
            const auto check_cell = [&](double got, double want) {
                if (want == kIllegible) return;
                ++cells;
                c.update(std::abs(got - want), 5e-4);
            };
            check_cell(sweep.alpha[row][col], golden.alpha[row][col]);
            check_cell(sweep.theta[row][col], golden.theta[row][col]);
            check_cell(sweep.theta_p[row][col], golden.theta_p[row][col]);
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = c.pass && secs < 60.0;
    r.worst = c.worst;
    r.detail = std::to_string(cells) + " legible cells, sweep took " +
               std::to_string(secs) + " s";
    return r;
}

// ---------------------------------------------------------------- criterion 6
CriterionResult closed_form_constants(std::uint64_t) {
    CriterionResult r;
    r.name = "closed-form-constants";
    r.tolerance = 1e-12;
    const double s13 = std::sqrt(13.0);
    const auto le = collision::leading_exponents();
    Check c;
    c.update(std::abs(le.a0_lagrange - (s13 - 1.0) / 8.0), 1e-14);
    c.update(std::abs(le.b0_euler - (std::sqrt(1185.0) / 5.0 - 1.0) / 8.0), 1e-14);
    c.update(std::abs(le.a0_escape + (s13 + 1.0) / 8.0), 1e-14);
    for (double theta0 : {0.2, 0.7}) {
        const auto sc = collision::series_init(theta0, 9);
        const double s3 = std::sin(3.0 * theta0), c3 = std::cos(3.0 * theta0);
        c.update(std::abs(sc.f[0] - 5.0 * (10.0 + s13) / 232.0 * s3), 1e-12);
        c.update(std::abs(sc.g[1] + 15.0 * (1.0 + 3.0 * s13) / 1856.0 * c3), 1e-12);
        c.update(std::abs(sc.c[3] / sc.c[2] - 15.0 * (10.0 + s13) / 116.0 * c3), 1e-12);
        c.update(std::abs(sc.d[1] / sc.d[0] - 5.0 * (10.0 + s13) / 116.0 * c3), 1e-12);
    }
    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "leading exponents at 1e-14, series coefficient ratios at 1e-12";
    return r;
}

// ---------------------------------------------------------------- criterion 7
CriterionResult isosceles_benchmark(std::uint64_t) {
    CriterionResult r;
    r.name = "isosceles-benchmark";
    r.tolerance = 2e-3;
    Check c;
    AdaptiveOptions ode;
    ode.abs_tol = ode.rel_tol = 1e-12;
    ode.h_init = 1e-4;
    const auto sol =
        collision::solve_wall(collision::WallCase::MeridianTheta0, 2.2, 0.01, 14, ode);
    c.update(std::abs(sol.alpha_at(M_PI / 2.0) - 0.18673), 5e-5);
    c.update(std::abs(isosceles_beta0() - 0.10865), 5e-5);
    if (!sol.cusp_found) c.update(1.0, 5e-3);
    else c.update(std::abs(sol.first_cusp - 1.876), 5e-3);

    Preset ps = preset_isosceles_beta0();
    const MassDistribution m = ps.masses;
    NewtonOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = 1e-13;
    opt.ode.h_max = 1e-3;
    opt.collision_factor = 3e-6;
    const Trajectory traj = integrate_newton(ps.state, m, 0.0, -1.05, opt);
    if (traj.reason == StopReason::CollisionDetected) {
        collision::AsymptoticsSeries series;
        for (const auto& smp : traj.samples) {
            const double rho = std::sqrt(smp.state.triangle(m).I());
            if (rho > 1e-2) continue;
            series.t.push_back(-smp.t);
            series.rho.push_back(rho);
        }
        const auto fit = collision::asymptotics_check(series, 2.0);
        c.update(std::abs(fit.t0 - 1.0228), 2e-3);
    } else {
        c.update(1.0, 2e-3);
    }

    const Trajectory half = integrate_newton(ps.state, m, 0.0, -0.5, opt);
    const SimState& sh = half.samples.back().state;
    const double rho_direct = std::sqrt(sh.triangle(m).I());
    const double x = sh.pos[1].x, y = sh.pos[1].y;
    const double Ih = (2.0 / 3.0) * x * x + 2.0 * y * y;
    const double phi_hat =
        std::acos(std::clamp(-4.0 * x * y / (std::sqrt(3.0) * Ih), -1.0, 1.0));
    const double rho_quad = collision::rho_from_alpha(
        [&](double s) { return sol.alpha_at(s); }, M_PI / 2.0, 1.0, phi_hat);
    c.update(std::abs(rho_quad - 0.634726), 2e-6);
    c.update(std::abs(rho_direct - 0.634726), 2e-6);

    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "alpha(pi/2), beta0, t0, first cusp, rho by both routes";
    return r;
}

// ---------------------------------------------------------------- criterion 8
CriterionResult sundman_asymptotics(std::uint64_t) {
    CriterionResult r;
    r.name = "sundman-asymptotics";
    r.tolerance = 0.01;
    Check c;
    {
        Preset ps = preset_isosceles_beta0();
        const MassDistribution m = ps.masses;
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-13;
        opt.ode.h_max = 1e-3;
        opt.collision_factor = 3e-6;
        const Trajectory traj = integrate_newton(ps.state, m, 0.0, -1.05, opt);
        collision::AsymptoticsSeries series;
        for (const auto& smp : traj.samples) {
            const double rho = std::sqrt(smp.state.triangle(m).I());
            if (rho > 1e-2) continue;
            const double xx = smp.state.pos[1].x, yy = smp.state.pos[1].y;
            const double I = (2.0 / 3.0) * xx * xx + 2.0 * yy * yy;
            series.t.push_back(-smp.t);
            series.rho.push_back(rho);
            series.s.push_back(
                std::acos(std::clamp(-4.0 * xx * yy / (std::sqrt(3.0) * I), -1.0, 1.0)));
        }
        const auto fit = collision::asymptotics_check(series, 3.0);
        c.update(std::abs(fit.rho_exponent - 2.0 / 3.0), 0.01);
        c.update(std::abs(fit.s_exponent - 0.43426), 0.01);
    }
    {
        Preset ps = preset_collinear_explosion(0.02);
        const MassDistribution m = ps.masses;
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-13;
        opt.collision_factor = 3e-6;
        const Trajectory traj = integrate_newton(ps.state, m, 0.0, -1.0, opt);
        collision::AsymptoticsSeries series;
        for (const auto& smp : traj.samples) {
            const double rho = std::sqrt(smp.state.triangle(m).I());
            if (rho > 0.42 || rho < 3.1e-4) continue;
            const ITriple tn = moments(smp.state.triangle(m)).normalized();
            series.t.push_back(-smp.t);
            series.rho.push_back(rho);
            series.s.push_back(std::acos(std::clamp(1.0 - 3.0 * tn.I3, -1.0, 1.0)));
        }
        const auto fit = collision::asymptotics_check(series, 3.0);
        c.update(std::abs(fit.rho_exponent - 2.0 / 3.0), 0.01);
        c.update(std::abs(fit.s_exponent - 0.98079), 0.01);
    }
    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "rho and arc-length exponents over >= 3 decades, both collision types";
    return r;
}

// ---------------------------------------------------------------- criterion 9
CriterionResult gradient_curvature(std::uint64_t seed) {
    CriterionResult r;
    r.name = "gradient-curvature";
    r.tolerance = 1e-5;
    const int N = 200;
    std::vector<double> px, py, pz;
    px.reserve(static_cast<size_t>(N) * N);
    py.reserve(px.capacity());
    pz.reserve(px.capacity());
    for (int i = 0; i < N; ++i) {
        const double phi = (i + 0.5) * (M_PI / 2.0) / N;
        for (int j = 0; j < N; ++j) {
            const double th = j * 2.0 * M_PI / N;
            px.push_back(std::sin(phi) * std::cos(th));
            py.push_back(std::sin(phi) * std::sin(th));
            pz.push_back(std::cos(phi));
        }
    }
    std::vector<double> kg(px.size());
    batch::gradient_curvature_batch()(px.data(), py.data(), pz.data(), px.size(), kg.data());

    const double bx[3] = {0.5, 0.5, -1.0};
    const double by[3] = {-std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.0};
    bool sign_ok = true;
    int tested = 0;
    for (size_t q = 0; q < px.size(); ++q) {
        const Vec3 p{px[q], py[q], pz[q]};
        if (p.z > 0.995) continue; // Lagrange point neighborhood
        double dmin = 10.0;
        double delta[3];
        for (int i = 0; i < 3; ++i) {
            const Vec3 b{bx[i], by[i], 0.0};
            delta[i] = (p - b).norm();
            dmin = std::min(dmin, std::min(delta[i], (p + b).norm()));
        }
        if (dmin < 0.1) continue; // collision and Euler neighborhoods
        const double A =
            (delta[0] - delta[1]) * (delta[1] - delta[2]) * (delta[2] - delta[0]);
        if (std::abs(A) < 1e-3 || p.z < 5e-3) continue; // chamber walls and equator
        ++tested;
        if (kg[q] * (-p.z * A) < 0.0) sign_ok = false;
    }

    std::mt19937_64 g(seed + 9);
    std::uniform_real_distribution<double> uphi(0.3, 1.25);
    std::uniform_real_distribution<double> uth(0.15, M_PI / 3.0 - 0.15);
    const MassDistribution m = MassDistribution::equal();
    const PotentialOptions popt{1e-9, LongitudeConvention::equal_mass_collision()};
    Check c;
    int used = 0;
    while (used < 100) {
        const double phi = uphi(g), th = uth(g);
        const Vec3 p{std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th),
                     std::cos(phi)};
        double kf;
        try {
            kf = collision::gradient_flow_curvature(p);
        } catch (const CriticalPointUndefined&) {
            continue;
        }
        ++used;
        const auto dir = [&](const Vec3& q) {
            const Vec3 grad = u_star_gradient_vector(q, m, popt);
            return grad / grad.norm();
        };
        const double hs = 1e-4;
        const auto step = [&](Vec3 q, double hh) {
            const Vec3 k1 = dir(q);
            const Vec3 k2 = dir((q + 0.5 * hh * k1).normalized());
            const Vec3 k3 = dir((q + 0.5 * hh * k2).normalized());
            const Vec3 k4 = dir((q + hh * k3).normalized());
            return (q + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
        };
        const Vec3 pf = step(p, hs), pff = step(pf, hs);
        const Vec3 pb = step(p, -hs), pbb = step(pb, -hs);
        const Vec3 d1 = (-1.0 * pff + 8.0 * pf - 8.0 * pb + 1.0 * pbb) * (1.0 / (12.0 * hs));
        const Vec3 d2 = (-1.0 * pff + 16.0 * pf - 30.0 * p + 16.0 * pb - 1.0 * pbb) *
                        (1.0 / (12.0 * hs * hs));
        const double traced = triple(p, d1, d2) / std::pow(d1.norm(), 3);
        c.update(std::abs(traced - kf) / std::max(1.0, std::abs(kf)), 1e-5);
    }
    r.pass = sign_ok && c.pass;
    r.worst = c.worst;
    r.detail = std::to_string(tested) + " grid points sign-checked (" +
               batch::active_backend() + " backend); 100 traced-line points";
    return r;
}

// --------------------------------------------------------------- criterion 10
CriterionResult property_suites(std::uint64_t seed) {
    CriterionResult r;
    r.name = "property-suites";
    r.tolerance = 1e-5;
    std::mt19937_64 g(seed + 10);
    Check c;

    // potential gradient vs finite differences
    {
        std::uniform_real_distribution<double> uphi(0.15, M_PI - 0.15);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
        int used = 0;
        while (used < 1000) {
            const MassDistribution m = random_masses(g);
            const ShapePoint p{uphi(g), uth(g), false};
            const auto bl = binary_longitudes(m, {});
            bool close_by = false;
            for (int i = 0; i < 3; ++i)
                if (shape_distance(p, ShapePoint{M_PI / 2.0, bl[i], false}) < 0.08)
                    close_by = true;
            if (close_by) continue;
            ++used;
            const PotentialEval pe = u_star(p, m);
            const double h = 1e-6;
            const double fphi = (u_star({p.phi + h, p.theta, false}, m).value -
                                 u_star({p.phi - h, p.theta, false}, m).value) /
                                (2 * h);
            const double fth = (u_star({p.phi, p.theta + h, false}, m).value -
                                u_star({p.phi, p.theta - h, false}, m).value) /
                               (2 * h);
            const double scale = std::max(1.0, pe.value);
            c.update(std::abs(pe.grad_phi - fphi) / scale, 1e-5);
            c.update(std::abs(pe.grad_theta - fth) / scale, 1e-5);
        }
    }

    // chart round trips and side identities (away from the degenerate equator)
    {
        std::uniform_real_distribution<double> uphi(0.05, M_PI - 0.05);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
        for (int rep = 0; rep < 10000; ++rep) {
            const MassDistribution m = random_masses(g);
            ShapePoint p{uphi(g), uth(g), false};
            if (std::abs(p.phi - M_PI / 2.0) < 1e-3) p.phi += 2e-3;
            const ITriple t = shape_to_itriple(p, m);
            const int orient = (p.phi <= M_PI / 2.0) ? +1 : -1;
            const ShapePoint q = itriple_to_shape(t, orient, m);
            c.update(std::abs(q.phi - p.phi), 1e-12);
            c.update(std::abs(std::remainder(q.theta - p.theta, 2.0 * M_PI)), 1e-12);
            const auto s_sphere = sides_from_unit(p, m);
            const auto s_direct = mutual_distances(t, m);
            for (int i = 0; i < 3; ++i)
                c.update(std::abs(s_sphere[i] - s_direct[i]), 1e-12);
        }
    }

    // conservation drift over >= 1e5 forced steps
    {
        const MassDistribution m = MassDistribution::equal();
        Preset ps = preset_lagrange_circular(m);
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
        opt.ode.h_max = ps.t_char / 40000.0;
        const Trajectory traj = integrate_newton(ps.state, m, 0.0, 2.5 * ps.t_char, opt);
        if (traj.steps < 100000) c.update(1.0, 1e-9);
        c.update(traj.energy_drift / std::abs(ps.h), 1e-9);
        c.update(traj.angmom_drift / std::abs(ps.omega), 1e-9);
    }

    // stationarity of the reduced action (gyroscopic form) on true solutions
    {
        const MassDistribution m(0.45, 0.35, 0.2);
        Preset ps = preset_perturbed_lagrange(m, 2e-2);
        NewtonOptions opt;
        opt.ode.abs_tol = opt.ode.rel_tol = 1e-12;
        opt.ode.h_max = 1e-3;
        const double T = 2.0;
        const Trajectory traj = integrate_newton(ps.state, m, 0.0, T, opt);
        std::vector<double> ts;
        std::vector<ITriple> Is, Ids;
        for (const auto& s : traj.samples) {
            ts.push_back(s.t);
            Is.push_back(moments(s.state.triangle(m)));
            const auto d = moment_rates(s.state, m);
            Ids.push_back({d[0], d[1], d[2]});
        }
        const auto curve = hermite_moduli_curve(ts, Is, Ids);
        const double Om = ps.omega;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const auto action = [&](double eps, const std::array<double, 3>& dir) {
            return integrate_gl5(
                [&](double t) {
                    const PlanarModuliSample s = curve(t);
                    double bump = std::sin(M_PI * t / T);
                    bump *= bump;
                    const double dbump =
                        2.0 * std::sin(M_PI * t / T) * std::cos(M_PI * t / T) * M_PI / T;
                    ITriple I = s.I;
                    ModuliVelocity v{s.Idot.I1, s.Idot.I2, s.Idot.I3};
                    I.I1 += eps * dir[0] * bump;
                    I.I2 += eps * dir[1] * bump;
                    I.I3 += eps * dir[2] * bump;
                    v.I1dot += eps * dir[0] * dbump;
                    v.I2dot += eps * dir[1] * dbump;
                    v.I3dot += eps * dir[2] * dbump;
                    const double tb = tbar(I, v, m);
                    const auto sd = mutual_distances(I, m);
                    const double U =
                        m.mhat(0) / sd[0] + m.mhat(1) / sd[1] + m.mhat(2) / sd[2];
                    const auto a = one_form_coefficients(0, I, +1, m);
                    const double th1 = a[0] * v.I1dot + a[1] * v.I2dot + a[2] * v.I3dot;
                    return tb - Om * Om / (2.0 * I.total()) + U - Om * th1;
                },
                0.0, T, 300);
        };
        for (int rep = 0; rep < 100; ++rep) {
            std::array<double, 3> dir{u(g), u(g), u(g)};
            const double eps = 1e-5;
            const double fv = (action(eps, dir) - action(-eps, dir)) / (2.0 * eps);
            c.update(std::abs(fv), 1e-6);
        }
    }

    r.pass = c.pass;
    r.worst = c.worst;
    r.detail = "gradient FD, chart round trips, conservation, reduced-action stationarity";
    return r;
}

} // namespace

const TableGolden& golden_tables() {
    static const TableGolden g = [] {
        GoldenTables src;
        return TableGolden{src.alpha, src.theta, src.theta_p};
    }();
    return g;
}

std::vector<std::string> acceptance_names() {
    return {"metric-isometry",      "gauss-bonnet",        "euler-reconstruction",
            "reduction-fidelity",   "table-reproduction",  "closed-form-constants",
            "isosceles-benchmark",  "sundman-asymptotics", "gradient-curvature",
            "property-suites"};
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
    using Fn = std::function<CriterionResult()>;
    const std::vector<std::pair<std::string, Fn>> all = {
        {"metric-isometry", [&] { return metric_isometry(opt.seed); }},
        {"gauss-bonnet", [&] { return gauss_bonnet(opt.seed); }},
        {"euler-reconstruction", [&] { return euler_reconstruction(opt.seed); }},
        {"reduction-fidelity", [&] { return reduction_fidelity(opt.seed); }},
        {"table-reproduction",
         [&] { return table_reproduction(opt.seed, opt.inject_fault); }},
        {"closed-form-constants", [&] { return closed_form_constants(opt.seed); }},
        {"isosceles-benchmark", [&] { return isosceles_benchmark(opt.seed); }},
        {"sundman-asymptotics", [&] { return sundman_asymptotics(opt.seed); }},
        {"gradient-curvature", [&] { return gradient_curvature(opt.seed); }},
        {"property-suites", [&] { return property_suites(opt.seed); }},
    };
    std::vector<CriterionResult> out;
    for (const auto& [name, fn] : all) {
        if (!opt.only.empty()) {
            bool wanted = false;
            for (const auto& sel : opt.only)
                if (name.find(sel) != std::string::npos) wanted = true;
            if (!wanted) continue;
        }
        const auto t0 = Clock::now();
        CriterionResult res;
        try {
            res = fn();
        } catch (const std::exception& e) {
            res.name = name;
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.push_back(res);
    }
    return out;
}

} // namespace shapesphere
