#include "shapesphere/shape.hpp"

#include <algorithm>
#include <cmath>

#include "shapesphere/errors.hpp"
#include "shapesphere/frame.hpp"
#include "shapesphere/numerics.hpp"

namespace shapesphere {

namespace {

double wrap_2pi(double theta) {
    theta = std::fmod(theta, 2.0 * M_PI);
    if (theta < 0) theta += 2.0 * M_PI;
    return theta;
}

// U* restricted to the equator (vector-algebra normalization), used only to
// locate the Euler points.
double equator_dU(double theta, const std::array<double, 3>& btheta,
                  const MassDistribution& m) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double k = 2.0 * std::pow(m.mhat(i), 1.5) / std::sqrt(1.0 - m[i]);
        const double d2 = 2.0 * (1.0 - std::cos(theta - btheta[i]));
        acc += -k * std::sin(theta - btheta[i]) / std::pow(d2, 1.5);
    }
    return acc;
}

} // namespace

std::array<double, 3> pole_angles_beta(const MassDistribution& m) {
    std::array<double, 3> beta{};
    for (int i = 0; i < 3; ++i) {
        const double c =
            (m[i + 1] * m[i + 2] - m[i]) / ((1.0 - m[i + 1]) * (1.0 - m[i + 2]));
        beta[i] = std::acos(std::clamp(c, -1.0, 1.0));
    }
    return beta;
}

MassDistribution masses_from_beta(const std::array<double, 3>& beta) {
    const double s = std::sin(beta[0]) + std::sin(beta[1]) + std::sin(beta[2]);
    double m[3];
    for (int i = 0; i < 3; ++i) m[i] = 1.0 - 2.0 * std::sin(beta[i]) / s;
    if (m[0] <= 0 || m[1] <= 0 || m[2] <= 0)
        throw NumericalError("masses_from_beta: angles not realizable");
    return {m[0], m[1], m[2]};
}

std::array<double, 3> binary_longitudes(const MassDistribution& m, LongitudeConvention conv) {
    const auto beta = pole_angles_beta(m);
    return {wrap_2pi(conv.offset), wrap_2pi(beta[2] + conv.offset),
            wrap_2pi(-beta[1] + conv.offset)};
}

SpecialPoints special_points(const MassDistribution& m, LongitudeConvention conv) {
    SpecialPoints sp;
    sp.beta = pole_angles_beta(m);

    // realizability: every beta_i strictly below the sum of the others
    const double sum_sin = std::sin(sp.beta[0]) + std::sin(sp.beta[1]) + std::sin(sp.beta[2]);
    for (int i = 0; i < 3; ++i) {
        if (!(2.0 * std::sin(sp.beta[i]) < sum_sin))
            throw NumericalError("special_points: collision triangle not central");
    }

    sp.binary_theta = binary_longitudes(m, conv);
    for (int i = 0; i < 3; ++i)
        sp.binary_unit[i] = {std::cos(sp.binary_theta[i]), std::sin(sp.binary_theta[i]), 0.0};

    // central angles of the pole shape: beta_i = 2 pi - 2 alpha_i
    for (int i = 0; i < 3; ++i) sp.alpha[i] = M_PI - 0.5 * sp.beta[i];

    // Euler point e_i sits on the open equator arc between b_j and b_k.
    const auto solve_arc = [&](double lo, double hi) {
        const double eps = 1e-9 * (hi - lo);
        return brent_root(
            [&](double th) { return equator_dU(th, sp.binary_theta, m); }, lo + eps, hi - eps);
    };
    const double t1 = sp.binary_theta[0];
    const double t2 = sp.binary_theta[0] + sp.beta[2];
    const double t3 = t2 + sp.beta[0]; // = 2 pi - beta[1] + offset
    sp.euler_theta[2] = wrap_2pi(solve_arc(t1, t2));
    sp.euler_theta[0] = wrap_2pi(solve_arc(t2, t3));
    sp.euler_theta[1] = wrap_2pi(solve_arc(t3, t1 + 2.0 * M_PI));
    for (int i = 0; i < 3; ++i)
        sp.euler_unit[i] = {std::cos(sp.euler_theta[i]), std::sin(sp.euler_theta[i]), 0.0};

    // Lagrange points from the closed forms.
    const double mbar = m.mbar(), mhat = m.mhat();
    const double xhat = 1.0 - mbar / (mhat * m.dual(0) * m[0]);
    const double yhat = std::sqrt(mbar) / mhat * (m[1] - m[2]) / (m[1] + m[2]);
    const double zhat = std::sqrt(3.0) * std::sqrt(mbar) / mhat;
    // rotate (x, y) into the requested convention
    const double co = std::cos(conv.offset), so = std::sin(conv.offset);
    sp.lagrange_north = {xhat * co - yhat * so, xhat * so + yhat * co, zhat};
    sp.lagrange_south = {sp.lagrange_north.x, sp.lagrange_north.y, -zhat};
    return sp;
}

ShapePoint itriple_to_shape(const ITriple& t_in, int orientation, const MassDistribution& m,
                            LongitudeConvention conv) {
    const ITriple t = t_in.normalized();
    const double Q = t.Q(m);
    if (Q < -1e-12) throw UnphysicalITriple("itriple_to_shape: Q < 0");

    const auto beta = pole_angles_beta(m);
    const double x0 = t.I1 / m.dual(0) - 1.0; // p . b1 in the default convention
    const double c2 = t.I2 / m.dual(1) - 1.0;
    const double y0 = (c2 - x0 * std::cos(beta[2])) / std::sin(beta[2]);
    const double z = (orientation >= 0 ? 1.0 : -1.0) * std::sqrt(std::max(Q, 0.0) / m.mbar());

    const double co = std::cos(conv.offset), so = std::sin(conv.offset);
    const Vec3 p{x0 * co - y0 * so, x0 * so + y0 * co, z};
    return ShapePoint::from_unit(p, 1e-12);
}

ITriple shape_to_itriple(const ShapePoint& p, const MassDistribution& m,
                         LongitudeConvention conv) {
    const auto btheta = binary_longitudes(m, conv);
    const double s = std::sin(p.phi);
    ITriple t;
    t.I1 = m.dual(0) * (1.0 + s * std::cos(p.theta - btheta[0]));
    t.I2 = m.dual(1) * (1.0 + s * std::cos(p.theta - btheta[1]));
    t.I3 = m.dual(2) * (1.0 + s * std::cos(p.theta - btheta[2]));
    return t;
}

ModuliPoint triangle_to_shape(const MTriangle& tri, LongitudeConvention conv) {
    if (!tri.is_planar(1e-9))
        throw NumericalError("triangle_to_shape: triangle must lie in the xy-plane");

    const double I = tri.I();
    ModuliPoint out;
    out.rho = std::sqrt(I);
    if (I == 0.0) {
        out.shape = ShapePoint::pole();
        return out;
    }

    const double delta = tri.signed_area();
    const int orientation = delta >= 0 ? +1 : -1;
    if (orientation < 0) {
        // reflect to the northern hemisphere, then mirror the colatitude back
        MTriangle mirrored({tri.a(0).x, -tri.a(0).y, 0.0}, {tri.a(1).x, -tri.a(1).y, 0.0},
                           {tri.a(2).x, -tri.a(2).y, 0.0}, tri.masses());
        ModuliPoint north = triangle_to_shape(mirrored, conv);
        north.shape.phi = M_PI - north.shape.phi;
        return north;
    }

    const auto& m = tri.masses();
    const double cos_phi = std::clamp(4.0 * std::sqrt(m.mbar()) * delta / I, -1.0, 1.0);
    const double phi = std::acos(cos_phi);
    const double sin_phi = std::sin(phi);

    if (sin_phi < 1e-9) {
        out.shape = ShapePoint::pole();
        return out;
    }

    double theta;
    if (std::abs(cos_phi) > 1e-6) {
        // eigenframe route (default convention: theta = 0 at b23)
        const EigenData eig = inertia_eigen(tri);
        const double num = -(1.0 + sin_phi) * std::sin(eig.psi1);
        const double den = cos_phi * std::cos(eig.psi1);
        double half = std::atan2(num, den);
        if (half < 0) half += M_PI; // theta/2 lives in [0, pi)
        theta = wrap_2pi(2.0 * half + conv.offset);
    } else {
        // equator neighborhood: the moment chart is well conditioned there
        ShapePoint p = itriple_to_shape(moments(tri), orientation, m, conv);
        theta = p.theta;
    }
    out.shape.phi = phi;
    out.shape.theta = theta;
    out.shape.at_pole = false;
    return out;
}

double shape_distance(const ShapePoint& p, const ShapePoint& q) {
    const double c = std::clamp(p.unit().dot(q.unit()), -1.0, 1.0);
    return 0.5 * std::acos(c);
}

double shape_distance_itriple(const ITriple& a_in, const ITriple& b_in,
                              const MassDistribution& m) {
    const ITriple a = a_in.normalized(), b = b_in.normalized();
    const double mbar = m.mbar();
    const double Qa = std::max(a.Q(m), 0.0), Qb = std::max(b.Q(m), 0.0);
    const double i1 = a.I1 - m.dual(0), i2 = a.I2 - m.dual(1);
    const double j1 = b.I1 - m.dual(0), j2 = b.I2 - m.dual(1);
    const double m1 = m[0], m2 = m[1], m3 = m[2];
    const double pol = (1.0 - m2) * (1.0 - m2) * i1 * j1 + (1.0 - m1) * (1.0 - m1) * i2 * j2 +
                       (m3 - m1 * m2) * (i1 * j2 + j1 * i2);
    const double c = std::clamp((std::sqrt(Qa * Qb) + pol) / mbar, -1.0, 1.0);
    return 0.5 * std::acos(c);
}

double dsigma2_coordinates(double I1, double I2, double dI1, double dI2,
                           const MassDistribution& m) {
    const double I3 = 1.0 - I1 - I2;
    const double Q = ITriple(I1, I2, I3).Q(m);
    if (Q <= 0.0) throw EclipseSingularity("dsigma2_coordinates: Q <= 0");
    const double m1 = m[0], m2 = m[1], m3 = m[2];
    const double a11 = -I2 * I2 + (1.0 - m2) * I2;
    const double a22 = -I1 * I1 + (1.0 - m1) * I1;
    // cross-term sign fixed by re-deriving the 2-variable reduction from the
    // symmetric 3-variable form (the bilinear term comes out positive)
    const double a12 = 2.0 * I1 * I2 - (1.0 - m2) * I1 - (1.0 - m1) * I2 + m3;
    return (a11 * dI1 * dI1 + a22 * dI2 * dI2 + a12 * dI1 * dI2) / Q;
}

double dsigma2_sphere_pullback(double I1, double I2, double dI1, double dI2,
                               const MassDistribution& m) {
    const ITriple t(I1, I2, 1.0 - I1 - I2);
    const ShapePoint p = itriple_to_shape(t, +1, m, {});
    const auto btheta = binary_longitudes(m, {});
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);

    // dI_i = m_i^* (cp cos(th_i) dphi - sp sin(th_i) dtheta), rows i = 1, 2
    const double th1 = p.theta - btheta[0], th2 = p.theta - btheta[1];
    const double a11 = m.dual(0) * cp * std::cos(th1), a12 = -m.dual(0) * sp * std::sin(th1);
    const double a21 = m.dual(1) * cp * std::cos(th2), a22 = -m.dual(1) * sp * std::sin(th2);
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-300)
        throw EclipseSingularity("dsigma2_sphere_pullback: chart degenerate");
    const double dphi = (a22 * dI1 - a12 * dI2) / det;
    const double dtheta = (-a21 * dI1 + a11 * dI2) / det;
    return 0.25 * (dphi * dphi + sp * sp * dtheta * dtheta);
}

DiskChart disk_chart(const MassDistribution& m) {
    const double m1 = m[0], m2 = m[1], m3 = m[2];
    DiskChart ch;
    ch.psi0 = 0.5 * std::atan2(2.0 * (m3 - m1 * m2), (m1 - m2) * (1.0 + m3));
    const double c2p = std::cos(2.0 * ch.psi0), s2p = std::sin(2.0 * ch.psi0);
    const double base = 0.5 * ((1.0 - m1) * (1.0 - m1) + (1.0 - m2) * (1.0 - m2));
    const double mu1 =
        base + 0.5 * (m1 - m2) * (1.0 + m3) * c2p + (m3 - m1 * m2) * s2p;
    const double mu2 =
        base - 0.5 * (m1 - m2) * (1.0 + m3) * c2p - (m3 - m1 * m2) * s2p;
    ch.sx = std::sqrt(m.mbar() / mu1);
    ch.sy = std::sqrt(m.mbar() / mu2);
    ch.c1 = m.dual(0);
    ch.c2 = m.dual(1);
    return ch;
}

std::array<double, 2> DiskChart::to_disk(double I1, double I2) const {
    const double i1 = I1 - c1, i2 = I2 - c2;
    const double cp = std::cos(psi0), sp = std::sin(psi0);
    return {(cp * i1 + sp * i2) / sx, (-sp * i1 + cp * i2) / sy};
}

std::array<double, 2> DiskChart::to_moments(double x, double y) const {
    const double cp = std::cos(psi0), sp = std::sin(psi0);
    return {cp * sx * x - sp * sy * y + c1, sp * sx * x + cp * sy * y + c2};
}

double dsigma2_disk(double x, double y, double dx, double dy) {
    const double w = 1.0 - x * x - y * y;
    if (w <= 0.0) throw EclipseSingularity("dsigma2_disk: outside open disk");
    return 0.25 * ((1.0 - y * y) * dx * dx + (1.0 - x * x) * dy * dy + 2.0 * x * y * dx * dy) / w;
}

MTriangle triangle_from_itriple(const ITriple& t, const MassDistribution& m, int orientation) {
    if (!t.physical(m)) throw UnphysicalITriple("triangle_from_itriple");
    const double r1 = std::sqrt(std::max(t.I1, 0.0) / m[0]);
    const double r2 = std::sqrt(std::max(t.I2, 0.0) / m[1]);
    const double r3 = std::sqrt(std::max(t.I3, 0.0) / m[2]);
    // central angles from the Ceva cosine law, laid out counterclockwise
    const auto ang = [&](int k) {
        const int i = MassDistribution::mod3(k + 1), j = MassDistribution::mod3(k + 2);
        const double denom = 2.0 * std::sqrt(m[i] * m[j] * t.I(i) * t.I(j));
        return std::acos(std::clamp(-t.C(k, m) / denom, -1.0, 1.0));
    };
    const double eta2 = ang(2);           // angle between a1 and a2 is alpha_3
    const double eta3 = eta2 + ang(0);    // then alpha_1 between a2 and a3
    MTriangle tri = MTriangle::planar(r1, 0.0, r2 * std::cos(eta2), r2 * std::sin(eta2),
                                      r3 * std::cos(eta3), r3 * std::sin(eta3), m);
    if (orientation < 0)
        tri = MTriangle::planar(tri.a(0).x, -tri.a(0).y, tri.a(1).x, -tri.a(1).y, tri.a(2).x,
                                -tri.a(2).y, m);
    return tri;
}

std::array<double, 3> sides_from_unit(const ShapePoint& p, const MassDistribution& m,
                                      LongitudeConvention conv) {
    const auto btheta = binary_longitudes(m, conv);
    const Vec3 u = p.unit();
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) {
        const Vec3 b{std::cos(btheta[i]), std::sin(btheta[i]), 0.0};
        s[i] = 0.5 * std::sqrt((1.0 - m[i]) / m.mhat(i)) * (u - b).norm();
    }
    return s;
}

} // namespace shapesphere
