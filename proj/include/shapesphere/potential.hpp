#pragma once

#include <array>

#include "shapesphere/masses.hpp"
#include "shapesphere/shape.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere {

struct PotentialEval {
    double value = 0.0;
    double grad_phi = 0.0;   // dU*/dphi
    double grad_theta = 0.0; // dU*/dtheta
};

struct PotentialOptions {
    double collision_tol = 1e-9; // chordal distance to a binary collision point
    LongitudeConvention convention{};
};

// Shape potential U* (restriction of the Newtonian potential to I = 1) with its
// chart gradient. Throws CollisionPole near a binary collision point.
PotentialEval u_star(const ShapePoint& p, const MassDistribution& m,
                     const PotentialOptions& opt = {});

// Same in the unit-vector picture, U*(p) = sum k_i / |p - b_i|.
double u_star_vector(const Vec3& p, const MassDistribution& m,
                     const PotentialOptions& opt = {});

// B(p) = sum k_i b_i / |p - b_i|^3 (a vector in the equator plane) and the
// tangential gradient grad U* = B - (B . p) p.
Vec3 gradient_field_B(const Vec3& p, const MassDistribution& m,
                      const PotentialOptions& opt = {});
Vec3 u_star_gradient_vector(const Vec3& p, const MassDistribution& m,
                            const PotentialOptions& opt = {});

// Equal-mass normalized potential (minimum value 1) and its chart partials, in
// the collision chart (theta = 0 at the Euler point e3).
double u_star_equal_norm(double phi, double theta);
std::array<double, 3> u_star_equal_norm_partials(double phi, double theta); // {U, dU/dphi, dU/dtheta}

// Partial sum through order n of the equal-mass trigonometric series
// 1/3 sum_k binom(-1/2, k) (-1)^k sin^k(phi) S_k with the S_k recursion.
double equal_mass_series(double phi, double theta, int order);

// S_k values themselves (polynomially in cos(3 theta)).
double equal_mass_series_S(int k, double theta);

struct LagrangeExpansion {
    double F0 = 0.0;                   // minimum value mhat^{3/2}
    double lambda1 = 0.0, lambda2 = 0.0; // eigenvalues of the quadratic term / kappa
    double alpha_tilde = 0.0;          // rotation angle of the diagonalizing frame
    double mu = 0.0;                   // sqrt(1 - 3 mhat)
    bool largest_on_t1 = false;        // largest eigenvalue attached to t~_1
};

LagrangeExpansion lagrange_expansion(const MassDistribution& m);

// Orthonormal tangent frame {t1, t2} at the Lagrange point with t1 along the
// meridian, plus the projection chart p(xi, eta) used by the local expansion.
struct LagrangeChart {
    Vec3 p0, t1, t2;
    Vec3 point(double xi, double eta) const; // projected back onto the sphere
};
LagrangeChart lagrange_chart(const MassDistribution& m);

} // namespace shapesphere
