#include "shapesphere/kinematics.hpp"

#include <cmath>

#include "shapesphere/errors.hpp"
#include "shapesphere/numerics.hpp"

namespace shapesphere {

namespace {

double signed_delta(const ITriple& t, int orientation, const MassDistribution& m,
                    double eclipse_tol) {
    const double I = t.total();
    const double Q = t.Q(m);
    if (Q < eclipse_tol * I * I)
        throw EclipseSingularity("kinematics: too close to the eclipse circle");
    const double delta = std::sqrt(Q) / (4.0 * m.mbar());
    return orientation >= 0 ? delta : -delta;
}

} // namespace

double tsigma(const ITriple& t, const ModuliVelocity& v, const MassDistribution& m,
              const KinematicsOptions& opt) {
    const double I = t.total();
    const double Q = t.Q(m);
    if (Q < opt.eclipse_tol * I * I) throw EclipseSingularity("tsigma: Q too small");
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        acc += m[i] * t.I(i + 1) * t.I(i + 2) * v.Idot(i) * v.Idot(i) -
               t.C(i, m) * t.I(i) * v.Idot(i + 1) * v.Idot(i + 2);
    }
    return acc / (2.0 * I * Q);
}

double tbar(const ITriple& t, const ModuliVelocity& v, const MassDistribution& m,
            const KinematicsOptions& opt) {
    const double I = t.total();
    const double Idot = v.total();
    return 0.125 * Idot * Idot / I + tsigma(t, v, m, opt);
}

std::array<double, 3> central_angle_rates(const ITriple& t, const ModuliVelocity& v,
                                          double delta, const MassDistribution& m) {
    const double pref = 1.0 / (8.0 * m.mbar() * delta);
    std::array<double, 3> rates{};
    for (int i = 0; i < 3; ++i) {
        rates[i] = pref * (-2.0 * m[i] * v.Idot(i) + t.C(i + 2, m) * v.Idot(i + 1) / t.I(i + 1) +
                           t.C(i + 1, m) * v.Idot(i + 2) / t.I(i + 2));
    }
    return rates;
}

std::array<double, 3> angular_velocities_zero(const ITriple& t, const ModuliVelocity& v,
                                              int orientation, const MassDistribution& m,
                                              const KinematicsOptions& opt) {
    const double delta = signed_delta(t, orientation, m, opt.eclipse_tol);
    const auto ad = central_angle_rates(t, v, delta, m);
    const double I = t.total();
    std::array<double, 3> w{};
    for (int i = 0; i < 3; ++i)
        w[i] = (t.I(i + 2) * ad[MassDistribution::mod3(i + 1)] -
                t.I(i + 1) * ad[MassDistribution::mod3(i + 2)]) /
               I;
    return w;
}

std::array<double, 3> angular_velocities(const ITriple& t, const ModuliVelocity& v, double omega,
                                         int orientation, const MassDistribution& m,
                                         const KinematicsOptions& opt) {
    auto w = angular_velocities_zero(t, v, orientation, m, opt);
    const double I = t.total();
    for (auto& wi : w) wi += omega / I;
    return w;
}

std::array<double, 3> one_form_coefficients(int i, const ITriple& t, int orientation,
                                            const MassDistribution& m,
                                            const KinematicsOptions& opt) {
    const double delta = signed_delta(t, orientation, m, opt.eclipse_tol);
    const double I = t.total();
    const double pref = 1.0 / (8.0 * m.mbar() * delta * I);
    std::array<double, 3> a{};
    const int i1 = MassDistribution::mod3(i + 1), i2 = MassDistribution::mod3(i + 2);
    a[MassDistribution::mod3(i)] =
        pref * (t.C(i + 2, m) * t.I(i + 2) - t.C(i + 1, m) * t.I(i + 1)) / t.I(i);
    a[i1] = -pref * (t.C(i, m) + 2.0 * m[i + 1] * t.I(i + 2));
    a[i2] = pref * (t.C(i, m) + 2.0 * m[i + 2] * t.I(i + 1));
    return a;
}

std::array<double, 3> one_form_integrals(const ShapePathFn& path, const MassDistribution& m,
                                         const PathIntegralOptions& opt) {
    const auto btheta = binary_longitudes(m, {});
    std::array<Vec3, 3> b{};
    for (int i = 0; i < 3; ++i) b[i] = {std::cos(btheta[i]), std::sin(btheta[i]), 0.0};

    std::array<CompensatedSum, 3> acc{};
    const double h = 1.0 / opt.segments;
    for (int s = 0; s < opt.segments; ++s) {
        const double mid = (s + 0.5) * h;
        for (int q = 0; q < 5; ++q) {
            const double u = mid + 0.5 * h * GaussLegendre5::nodes[q];
            const double w = 0.5 * h * GaussLegendre5::weights[q];
            const ShapePathPoint pt = path(u);
            ITriple t;
            ModuliVelocity dI;
            t.I1 = m.dual(0) * (1.0 + pt.p.dot(b[0]));
            t.I2 = m.dual(1) * (1.0 + pt.p.dot(b[1]));
            t.I3 = m.dual(2) * (1.0 + pt.p.dot(b[2]));
            dI.I1dot = m.dual(0) * pt.dp.dot(b[0]);
            dI.I2dot = m.dual(1) * pt.dp.dot(b[1]);
            dI.I3dot = m.dual(2) * pt.dp.dot(b[2]);
            const double Q = t.Q(m);
            if (Q < opt.eclipse_tol)
                throw SingularOnEquator("one_form_integrals: node on the eclipse circle");
            const int orientation = pt.p.z >= 0 ? +1 : -1;
            for (int i = 0; i < 3; ++i) {
                const auto a = one_form_coefficients(i, t, orientation, m,
                                                     KinematicsOptions{opt.eclipse_tol});
                acc[i].add(w * (a[0] * dI.I1dot + a[1] * dI.I2dot + a[2] * dI.I3dot));
            }
        }
    }
    return {acc[0].value(), acc[1].value(), acc[2].value()};
}

ShapePathFn geodesic_polyline(const std::vector<Vec3>& vertices) {
    const int n = static_cast<int>(vertices.size()) - 1;
    if (n < 1) throw NumericalError("geodesic_polyline: need at least two vertices");
    return [vertices, n](double u) -> ShapePathPoint {
        double scaled = u * n;
        int arc = std::min(static_cast<int>(scaled), n - 1);
        double tau = scaled - arc;
        const Vec3& a = vertices[arc];
        const Vec3& b = vertices[arc + 1];
        const double c = std::clamp(a.dot(b), -1.0, 1.0);
        const double w = std::acos(c);
        ShapePathPoint out;
        if (w < 1e-12) {
            out.p = a;
            out.dp = (b - a) * static_cast<double>(n);
            return out;
        }
        const double sw = std::sin(w);
        out.p = (std::sin((1.0 - tau) * w) * a + std::sin(tau * w) * b) / sw;
        out.dp = (w / sw) * (-std::cos((1.0 - tau) * w) * a + std::cos(tau * w) * b) *
                 static_cast<double>(n);
        return out;
    };
}

std::array<double, 3> one_form_integrals_polyline(const std::vector<Vec3>& vertices,
                                                  const MassDistribution& m,
                                                  const PathIntegralOptions& opt) {
    std::array<double, 3> acc{};
    for (size_t e = 0; e + 1 < vertices.size(); ++e) {
        const auto edge = geodesic_polyline({vertices[e], vertices[e + 1]});
        const auto part = one_form_integrals(edge, m, opt);
        for (int i = 0; i < 3; ++i) acc[i] += part[i];
    }
    return acc;
}

double spherical_polygon_area_half_sphere(const std::vector<Vec3>& vertices) {
    // signed excess on the unit sphere by fan decomposition, then scale by 1/4
    std::vector<Vec3> v = vertices;
    if ((v.front() - v.back()).norm() < 1e-14) v.pop_back();
    const int n = static_cast<int>(v.size());
    double excess = 0.0;
    for (int k = 1; k + 1 < n; ++k) {
        const Vec3 &a = v[0], &b = v[k], &c = v[k + 1];
        const double num = triple(a, b, c);
        const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
        excess += 2.0 * std::atan2(num, den);
    }
    return 0.25 * excess;
}

std::array<double, 3> geometric_phase(const ShapePathFn& path, const MassDistribution& m,
                                      double omega, const std::function<double(double)>& I_of_t,
                                      double t0, double t1, const PathIntegralOptions& opt) {
    auto phases = one_form_integrals(path, m, opt);
    if (omega != 0.0) {
        const double dyn = integrate_adaptive(
            [&](double t) { return omega / I_of_t(t); }, t0, t1, 1e-12, 16);
        for (auto& p : phases) p += dyn;
    }
    return phases;
}

} // namespace shapesphere
