#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "shapesphere/masses.hpp"
#include "shapesphere/triangle.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere {

// Zero-meridian placement. Default puts the binary collision b23 at theta = 0;
// the equal-mass collision chart shifts it so theta = 0 sits at the Euler point
// e3 and the collision points land at -pi/3, pi/3, pi.
struct LongitudeConvention {
    double offset = 0.0; // theta_conv = theta_default + offset

    static LongitudeConvention b23_zero() { return {0.0}; }
    static LongitudeConvention equal_mass_collision() { return {-M_PI / 3.0}; }
};

struct ShapePoint {
    double phi = 0.0;   // colatitude in [0, pi]
    double theta = 0.0; // longitude in [0, 2pi), reported 0 at the poles
    bool at_pole = false;

    static ShapePoint pole(bool north = true) { return {north ? 0.0 : M_PI, 0.0, true}; }

    // Unit vector on the magnified sphere S^2(1).
    Vec3 unit() const {
        return {std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi)};
    }
    static ShapePoint from_unit(const Vec3& p, double pole_tol = 1e-14) {
        ShapePoint s;
        const double rxy = std::hypot(p.x, p.y);
        s.phi = std::atan2(rxy, p.z);
        if (rxy < pole_tol) {
            s.at_pole = true;
            s.theta = 0.0;
        } else {
            s.theta = std::atan2(p.y, p.x);
            if (s.theta < 0) s.theta += 2.0 * M_PI;
        }
        return s;
    }
};

struct ModuliPoint {
    double rho = 0.0; // size, sqrt(I)
    ShapePoint shape;
};

struct SpecialPoints {
    std::array<double, 3> binary_theta{};  // longitudes of b23, b31, b12
    std::array<Vec3, 3> binary_unit{};     // unit vectors b^_i
    std::array<double, 3> euler_theta{};   // longitudes of the Euler points e^_i
    std::array<Vec3, 3> euler_unit{};
    Vec3 lagrange_north{};                 // p^_0+ = (x^, y^, z^)
    Vec3 lagrange_south{};
    std::array<double, 3> beta{};          // central angles between collision points
    std::array<double, 3> alpha{};         // central angles of the pole shape
};

// Longitudes of the three binary collision points in the given convention.
std::array<double, 3> binary_longitudes(const MassDistribution& m,
                                        LongitudeConvention conv = {});

// cos(beta_i) = (m_j m_k - m_i) / ((1 - m_j)(1 - m_k)), angles between collision rays.
std::array<double, 3> pole_angles_beta(const MassDistribution& m);

// Recover the mass distribution from the beta angles (round trip of the above).
MassDistribution masses_from_beta(const std::array<double, 3>& beta);

SpecialPoints special_points(const MassDistribution& m, LongitudeConvention conv = {});

// Congruence class -> point on the shape sphere. `orientation` is the sign of
// the oriented area (+1 on the northern hemisphere).
ShapePoint itriple_to_shape(const ITriple& t, int orientation, const MassDistribution& m,
                            LongitudeConvention conv = {});

ITriple shape_to_itriple(const ShapePoint& p, const MassDistribution& m,
                         LongitudeConvention conv = {});

// Planar oriented triangle -> moduli point (size + shape). Uses the eigenframe
// longitude formula away from the equator and the moment chart near it.
ModuliPoint triangle_to_shape(const MTriangle& tri, LongitudeConvention conv = {});

// Spherical distance on M* = S^2(1/2): half the unit-sphere angle.
double shape_distance(const ShapePoint& p, const ShapePoint& q);

// Same distance evaluated from the bilinear I-coordinate formula; valid when
// both points lie on a common (closed) hemisphere.
double shape_distance_itriple(const ITriple& a, const ITriple& b, const MassDistribution& m);

// Kinematic metric restricted to I = 1 in (I1, I2) coordinates: quadratic form
// value on the tangent vector (dI1, dI2) at the interior point (I1, I2).
double dsigma2_coordinates(double I1, double I2, double dI1, double dI2,
                           const MassDistribution& m);

// Pullback of (1/4)(dphi^2 + sin^2 phi dtheta^2) under the chart
// (I1, I2) -> (phi, theta) defined by the intrinsic representation.
double dsigma2_sphere_pullback(double I1, double I2, double dI1, double dI2,
                               const MassDistribution& m);

// Affine coordinate change (I1, I2) -> (x, y) that maps the physical region to
// the unit disk and takes the shape metric to the disk form of the round metric.
struct DiskChart {
    double psi0 = 0.0;
    double sx = 0.0, sy = 0.0; // axis scalings sqrt(mbar / mu_{1,2})
    double c1 = 0.0, c2 = 0.0; // center (dual masses)

    std::array<double, 2> to_disk(double I1, double I2) const;
    std::array<double, 2> to_moments(double x, double y) const; // returns (I1, I2)
};
DiskChart disk_chart(const MassDistribution& m);

// Metric in disk coordinates: (1/4)[(1-y^2)dx^2 + (1-x^2)dy^2 + 2xy dx dy]/(1-x^2-y^2).
double dsigma2_disk(double x, double y, double dx, double dy);

// Side lengths from the unit-vector picture: s_i = 1/2 sqrt((1-m_i)/mhat_i) |p - b^_i|.
std::array<double, 3> sides_from_unit(const ShapePoint& p, const MassDistribution& m,
                                      LongitudeConvention conv = {});

// A planar representative with the given moments (vertex 1 on the positive
// x-axis, the stated orientation).
MTriangle triangle_from_itriple(const ITriple& t, const MassDistribution& m,
                                int orientation = +1);

} // namespace shapesphere
