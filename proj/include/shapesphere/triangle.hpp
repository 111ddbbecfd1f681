#pragma once

#include <array>
#include <cmath>

#include "shapesphere/errors.hpp"
#include "shapesphere/masses.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere {

// Individual polar moments of inertia I_i = m_i |a_i|^2.
struct ITriple {
    double I1 = 0.0, I2 = 0.0, I3 = 0.0;

    ITriple() = default;
    ITriple(double a, double b, double c) : I1(a), I2(b), I3(c) {}

    double I(int i) const {
        switch (MassDistribution::mod3(i)) {
            case 0: return I1;
            case 1: return I2;
            default: return I3;
        }
    }
    double total() const { return I1 + I2 + I3; }

    // C_1 = -m1 I1 + m2 I2 + m3 I3, cyclically.
    double C(int i, const MassDistribution& m) const {
        return -m[i] * I(i) + m[i + 1] * I(i + 1) + m[i + 2] * I(i + 2);
    }

    // Heron form of the squared area: Q = 16 mbar^2 Delta^2.
    double Q(const MassDistribution& m) const {
        const double a = m[0] * I1, b = m[1] * I2, c = m[2] * I3;
        return 2.0 * (a * b + b * c + c * a) - (a * a + b * b + c * c);
    }

    ITriple normalized() const {
        const double s = total();
        return {I1 / s, I2 / s, I3 / s};
    }

    bool physical(const MassDistribution& m, double tol = 1e-12) const {
        const double I = total();
        return I1 >= 0 && I2 >= 0 && I3 >= 0 && Q(m) >= -tol * I * I;
    }
};

// An m-triangle: three position vectors in a center-of-mass frame.
class MTriangle {
  public:
    MTriangle(const Vec3& a1, const Vec3& a2, const Vec3& a3, const MassDistribution& m)
        : a_{a1, a2, a3}, m_(m) {
        recenter();
    }

    // Planar constructor, z = 0.
    static MTriangle planar(double x1, double y1, double x2, double y2, double x3, double y3,
                            const MassDistribution& m) {
        return MTriangle({x1, y1, 0.0}, {x2, y2, 0.0}, {x3, y3, 0.0}, m);
    }

    const Vec3& a(int i) const { return a_[MassDistribution::mod3(i)]; }
    const MassDistribution& masses() const { return m_; }

    double I() const {
        return m_[0] * a_[0].norm2() + m_[1] * a_[1].norm2() + m_[2] * a_[2].norm2();
    }
    double rho() const { return std::sqrt(I()); }

    bool is_planar(double tol = 1e-12) const {
        const double s = scale();
        return std::abs(a_[0].z) <= tol * s && std::abs(a_[1].z) <= tol * s &&
               std::abs(a_[2].z) <= tol * s;
    }

    double scale() const {
        return std::max({a_[0].norm(), a_[1].norm(), a_[2].norm(), 1e-300});
    }

    Vec3 side(int i, int j) const { return a(j) - a(i); }
    double r(int i, int j) const { return side(i, j).norm(); }

    // Signed area: positive when (a1, a2, a3) winds counterclockwise in its own
    // plane oriented by a1 x a2. For planar z=0 triangles this is the z-signed area.
    double signed_area() const {
        Vec3 n = (a_[1] - a_[0]).cross(a_[2] - a_[0]);
        double area2 = n.norm();
        if (area2 == 0.0) return 0.0;
        if (std::abs(n.z) > 1e-14 * area2) return 0.5 * (n.z > 0 ? area2 : -area2);
        return 0.5 * area2;
    }
    double area() const { return std::abs(signed_area()); }

    Vec3 normal() const {
        Vec3 n = (a_[1] - a_[0]).cross(a_[2] - a_[0]);
        const double len = n.norm();
        if (len == 0.0) throw DegenerateTriangle("normal: collinear configuration");
        return n / len;
    }

  private:
    void recenter() {
        Vec3 com = m_[0] * a_[0] + m_[1] * a_[1] + m_[2] * a_[2];
        for (auto& a : a_) a -= com;
    }

    std::array<Vec3, 3> a_;
    MassDistribution m_;
};

struct CevaInvariants {
    double area = 0.0;                    // |Delta|
    double signed_area = 0.0;             // Delta with orientation sign (planar)
    std::array<double, 3> sub_areas{};    // Delta_i = m_i Delta
    std::array<double, 3> central_angles{}; // alpha_i, opposite to vertex P_i
    double Q = 0.0;                       // quadratic form, equals 16 mbar^2 Delta^2
};

ITriple moments(const MTriangle& tri);

// s_i^2 = ((1 - m_i) I - I_i) / (m_j m_k); throws NegativeSquaredDistance.
std::array<double, 3> mutual_distances(const ITriple& t, const MassDistribution& m);

// Degeneracy threshold: collinear when Q < qtol * I^2 (angles unavailable there).
CevaInvariants ceva_invariants(const MTriangle& tri, double qtol = 1e-12);

// Central angles alone; throws DegenerateTriangle below the threshold.
std::array<double, 3> central_angles(const MTriangle& tri, double qtol = 1e-12);

// Normal components of the gravitational torques at the three vertices.
std::array<double, 3> torques(const MTriangle& tri, double collision_tol = 1e-12);

// Newtonian potential U = sum_{i<j} m_i m_j / r_ij and per-body forces.
double newton_potential(const MTriangle& tri);
std::array<Vec3, 3> newton_forces(const MTriangle& tri);

} // namespace shapesphere
