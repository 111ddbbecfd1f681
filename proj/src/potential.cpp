#include "shapesphere/potential.hpp"

#include <algorithm>
#include <cmath>

#include "shapesphere/errors.hpp"

namespace shapesphere {

namespace {

// coefficient of (1 - sin phi cos(theta - theta_i))^{-1/2} in U*
double ustar_coeff(const MassDistribution& m, int i) {
    return std::pow(m.mhat(i), 1.5) / std::sqrt(m.dual(i));
}

double u3_coeff(const MassDistribution& m, int i) {
    return 2.0 * std::pow(m.mhat(i), 1.5) / std::sqrt(1.0 - m[i]);
}

} // namespace

PotentialEval u_star(const ShapePoint& p, const MassDistribution& m,
                     const PotentialOptions& opt) {
    const auto btheta = binary_longitudes(m, opt.convention);
    const double s = std::sin(p.phi), c = std::cos(p.phi);
    PotentialEval out;
    for (int i = 0; i < 3; ++i) {
        const double ct = std::cos(p.theta - btheta[i]);
        const double st = std::sin(p.theta - btheta[i]);
        const double w = 1.0 - s * ct;
        if (2.0 * w < opt.collision_tol * opt.collision_tol)
            throw CollisionPole("u_star: binary collision point");
        const double K = ustar_coeff(m, i);
        const double w12 = std::sqrt(w);
        out.value += K / w12;
        const double w32 = w * w12;
        out.grad_phi += 0.5 * K * c * ct / w32;
        out.grad_theta -= 0.5 * K * s * st / w32;
    }
    return out;
}

double u_star_vector(const Vec3& p, const MassDistribution& m, const PotentialOptions& opt) {
    const auto btheta = binary_longitudes(m, opt.convention);
    double u = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 b{std::cos(btheta[i]), std::sin(btheta[i]), 0.0};
        const double d = (p - b).norm();
        if (d < opt.collision_tol) throw CollisionPole("u_star_vector: binary collision point");
        u += u3_coeff(m, i) / d;
    }
    return u;
}

Vec3 gradient_field_B(const Vec3& p, const MassDistribution& m, const PotentialOptions& opt) {
    const auto btheta = binary_longitudes(m, opt.convention);
    Vec3 B{};
    for (int i = 0; i < 3; ++i) {
        const Vec3 b{std::cos(btheta[i]), std::sin(btheta[i]), 0.0};
        const double d = (p - b).norm();
        if (d < opt.collision_tol) throw CollisionPole("gradient_field_B: collision point");
        B += (u3_coeff(m, i) / (d * d * d)) * b;
    }
    return B;
}

Vec3 u_star_gradient_vector(const Vec3& p, const MassDistribution& m,
                            const PotentialOptions& opt) {
    const Vec3 B = gradient_field_B(p, m, opt);
    return B - B.dot(p) * p;
}

double u_star_equal_norm(double phi, double theta) {
    return u_star_equal_norm_partials(phi, theta)[0];
}

std::array<double, 3> u_star_equal_norm_partials(double phi, double theta) {
    // collision chart: b-points at -pi/3, pi/3, pi
    static const double bt[3] = {-M_PI / 3.0, M_PI / 3.0, M_PI};
    const double s = std::sin(phi), c = std::cos(phi);
    double u = 0.0, up = 0.0, ut = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ct = std::cos(theta - bt[i]);
        const double st = std::sin(theta - bt[i]);
        const double w = 1.0 - s * ct;
        const double w12 = std::sqrt(w);
        const double w32 = w * w12;
        u += 1.0 / w12;
        up += 0.5 * c * ct / w32;
        ut -= 0.5 * s * st / w32;
    }
    return {u / 3.0, up / 3.0, ut / 3.0};
}

double equal_mass_series_S(int k, double theta) {
    const double c3 = std::cos(3.0 * theta);
    double s0 = 3.0, s1 = 0.0, s2 = 1.5;
    if (k == 0) return s0;
    if (k == 1) return s1;
    if (k == 2) return s2;
    for (int j = 3; j <= k; ++j) {
        const double next = 0.75 * s1 - 0.25 * c3 * s0;
        s0 = s1;
        s1 = s2;
        s2 = next;
    }
    return s2;
}

double equal_mass_series(double phi, double theta, int order) {
    const double s = std::sin(phi);
    double acc = 0.0;
    double binom = 1.0; // binom(-1/2, k) (-1)^k = (2k-1)!! / (2^k k!)
    double spow = 1.0;
    for (int k = 0; k <= order; ++k) {
        acc += binom * spow * equal_mass_series_S(k, theta);
        binom *= (2.0 * k + 1.0) / (2.0 * (k + 1.0));
        spow *= s;
    }
    return acc / 3.0;
}

LagrangeExpansion lagrange_expansion(const MassDistribution& m) {
    LagrangeExpansion e;
    const double mhat = m.mhat(), mbar = m.mbar();
    e.F0 = std::pow(mhat, 1.5);
    e.mu = std::sqrt(std::max(1.0 - 3.0 * mhat, 0.0));
    e.lambda1 = mbar / (2.0 * mhat) * (1.0 + e.mu);
    e.lambda2 = mbar / (2.0 * mhat) * (1.0 - e.mu);
    const double m1 = m[0], m2 = m[1], m3 = m[2];
    const double frak = (m1 - m2) * (m2 - m3) * (m3 - m1);
    const double num = -std::sqrt(3.0) * mhat * frak;
    const double den = mhat * mhat + 9.0 * mbar * mhat - 6.0 * mbar;
    e.alpha_tilde = 0.5 * std::atan2(num, den);
    // largest eigenvalue belongs to t~_1 iff sin(2 alpha~) and B share sign
    const double B = 0.25 * (-std::sqrt(3.0) * mbar / (mhat * mhat - 3.0 * mbar)) * frak;
    e.largest_on_t1 = std::sin(2.0 * e.alpha_tilde) * B >= 0.0;
    return e;
}

LagrangeChart lagrange_chart(const MassDistribution& m) {
    const SpecialPoints sp = special_points(m);
    LagrangeChart ch;
    ch.p0 = sp.lagrange_north;
    const double zh = ch.p0.z;
    const double r = std::sqrt(std::max(1.0 - zh * zh, 0.0));
    if (r < 1e-12) {
        // equal masses: Lagrange point at the pole, meridian direction is free
        ch.t1 = {1.0, 0.0, 0.0};
        ch.t2 = {0.0, 1.0, 0.0};
        return ch;
    }
    ch.t1 = {zh / r * ch.p0.x, zh / r * ch.p0.y, -r};
    // t1 tangent to the meridian; keep {t1, t2, p0} positively oriented
    ch.t2 = {-ch.p0.y / r, ch.p0.x / r, 0.0};
    if (triple(ch.t1, ch.t2, ch.p0) < 0) ch.t2 = -ch.t2;
    return ch;
}

Vec3 LagrangeChart::point(double xi, double eta) const {
    const double zeta = -1.0 + std::sqrt(std::max(1.0 - xi * xi - eta * eta, 0.0));
    return p0 + xi * t1 + eta * t2 + zeta * p0;
}

} // namespace shapesphere
