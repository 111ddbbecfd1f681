#include "shapesphere/triangle.hpp"

#include <algorithm>

namespace shapesphere {

ITriple moments(const MTriangle& tri) {
    const auto& m = tri.masses();
    return {m[0] * tri.a(0).norm2(), m[1] * tri.a(1).norm2(), m[2] * tri.a(2).norm2()};
}

std::array<double, 3> mutual_distances(const ITriple& t, const MassDistribution& m) {
    const double I = t.total();
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) {
        const double s2 = ((1.0 - m[i]) * I - t.I(i)) / m.mhat(i);
        if (s2 < -1e-12 * std::max(I, 1.0))
            throw NegativeSquaredDistance("mutual_distances: unphysical ITriple");
        s[i] = std::sqrt(std::max(s2, 0.0));
    }
    return s;
}

CevaInvariants ceva_invariants(const MTriangle& tri, double qtol) {
    const auto& m = tri.masses();
    CevaInvariants out;
    out.signed_area = tri.signed_area();
    out.area = std::abs(out.signed_area);
    for (int i = 0; i < 3; ++i) out.sub_areas[i] = m[i] * out.signed_area;

    const ITriple t = moments(tri);
    out.Q = t.Q(m);

    const double I = t.total();
    if (out.Q < qtol * I * I) {
        out.central_angles = {std::nan(""), std::nan(""), std::nan("")};
        return out; // area outputs are valid, angle extraction is not
    }
    for (int k = 0; k < 3; ++k) {
        const int i = MassDistribution::mod3(k + 1), j = MassDistribution::mod3(k + 2);
        const double denom = 2.0 * std::sqrt(m[i] * m[j] * t.I(i) * t.I(j));
        double c = -t.C(k, m) / denom;
        c = std::clamp(c, -1.0, 1.0);
        out.central_angles[k] = std::acos(c);
    }
    return out;
}

std::array<double, 3> central_angles(const MTriangle& tri, double qtol) {
    const ITriple t = moments(tri);
    const double I = t.total();
    if (t.Q(tri.masses()) < qtol * I * I)
        throw DegenerateTriangle("central_angles: collinear configuration");
    return ceva_invariants(tri, qtol).central_angles;
}

std::array<double, 3> torques(const MTriangle& tri, double collision_tol) {
    const auto& m = tri.masses();
    const double scale = tri.scale();
    const double delta = tri.signed_area();
    const double mbar = m.mbar();
    std::array<double, 3> t{};
    for (int i = 0; i < 3; ++i) {
        const double r1 = tri.r(i, i + 1);
        const double r2 = tri.r(i, i + 2);
        if (r1 < collision_tol * scale || r2 < collision_tol * scale)
            throw CollisionSingularity("torques: binary collision");
        t[i] = 2.0 * mbar * delta * (1.0 / (r1 * r1 * r1) - 1.0 / (r2 * r2 * r2));
    }
    return t;
}

double newton_potential(const MTriangle& tri) {
    const auto& m = tri.masses();
    double u = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) u += m[i] * m[j] / tri.r(i, j);
    return u;
}

std::array<Vec3, 3> newton_forces(const MTriangle& tri) {
    const auto& m = tri.masses();
    std::array<Vec3, 3> f{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const Vec3 d = tri.a(j) - tri.a(i);
            const double r = d.norm();
            f[i] += (m[i] * m[j] / (r * r * r)) * d;
        }
    }
    return f;
}

} // namespace shapesphere
