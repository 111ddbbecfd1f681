#pragma once

#include <array>
#include <functional>
#include <vector>

#include "shapesphere/masses.hpp"
#include "shapesphere/shape.hpp"
#include "shapesphere/triangle.hpp"

namespace shapesphere {

struct VelocitySplit {
    double total = 0.0;
    double rotational = 0.0; // Omega^2 / 2I for planar motion
    double size_change = 0.0;
    double shape_change = 0.0;
};

struct ModuliVelocity {
    double I1dot = 0.0, I2dot = 0.0, I3dot = 0.0;

    double Idot(int i) const {
        switch (MassDistribution::mod3(i)) {
            case 0: return I1dot;
            case 1: return I2dot;
            default: return I3dot;
        }
    }
    double total() const { return I1dot + I2dot + I3dot; }
};

struct KinematicsOptions {
    double eclipse_tol = 1e-10; // refuse 1/Q and 1/Delta within Q < tol * I^2
};

// Kinetic energy of the moduli curve (shape + size change) in the
// I-coordinates. Throws EclipseSingularity near Q = 0.
double tbar(const ITriple& t, const ModuliVelocity& v, const MassDistribution& m,
            const KinematicsOptions& opt = {});

// T^sigma alone (tbar minus the size-change part).
double tsigma(const ITriple& t, const ModuliVelocity& v, const MassDistribution& m,
              const KinematicsOptions& opt = {});

// Rates of the central angles alpha_i. `delta` is the signed area.
std::array<double, 3> central_angle_rates(const ITriple& t, const ModuliVelocity& v,
                                          double delta, const MassDistribution& m);

// Individual scalar angular velocities. omega_i = omega_i^0 + Omega / I where
// omega_i^0 depends only on the moduli data and the orientation sign of Delta.
std::array<double, 3> angular_velocities_zero(const ITriple& t, const ModuliVelocity& v,
                                              int orientation, const MassDistribution& m,
                                              const KinematicsOptions& opt = {});
std::array<double, 3> angular_velocities(const ITriple& t, const ModuliVelocity& v, double omega,
                                         int orientation, const MassDistribution& m,
                                         const KinematicsOptions& opt = {});

// Coefficients A_j of the kinematic 1-form Theta_i = sum_j A_j dI_j at a point.
std::array<double, 3> one_form_coefficients(int i, const ITriple& t, int orientation,
                                            const MassDistribution& m,
                                            const KinematicsOptions& opt = {});

// A shape path for line integrals: positions on the upper unit hemisphere, with
// derivative, parametrized over [0, 1].
struct ShapePathPoint {
    Vec3 p;    // unit vector on S^2(1)
    Vec3 dp;   // d p / du (tangent to sphere)
};
using ShapePathFn = std::function<ShapePathPoint(double u)>;

struct PathIntegralOptions {
    int segments = 256;
    double eclipse_tol = 1e-10;
};

// Line integrals of the three kinematic 1-forms along a parametrized path.
// Throws SingularOnEquator if a quadrature node is too close to the eclipse
// circle.
std::array<double, 3> one_form_integrals(const ShapePathFn& path, const MassDistribution& m,
                                         const PathIntegralOptions& opt = {});

// Great-circle polyline through the given unit vectors (closed if the first and
// last coincide).
ShapePathFn geodesic_polyline(const std::vector<Vec3>& vertices);

// Integrates the 1-forms edge by edge along a great-circle polyline so the
// quadrature segments line up with the corners.
std::array<double, 3> one_form_integrals_polyline(const std::vector<Vec3>& vertices,
                                                  const MassDistribution& m,
                                                  const PathIntegralOptions& opt = {});

// Signed spherical area (on S^2(1/2)) of the geodesic polygon with the given
// vertices on the unit sphere, by the angle-excess formula.
double spherical_polygon_area_half_sphere(const std::vector<Vec3>& vertices);

// Geometric + dynamical phase: Delta phi_i = closed-path integral of Theta_i
// plus the time integral of Omega / I(t) over [t0, t1].
std::array<double, 3> geometric_phase(const ShapePathFn& path, const MassDistribution& m,
                                      double omega, const std::function<double(double)>& I_of_t,
                                      double t0, double t1, const PathIntegralOptions& opt = {});

} // namespace shapesphere
