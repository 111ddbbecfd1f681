#pragma once

#include <array>
#include <functional>
#include <vector>

#include "shapesphere/masses.hpp"
#include "shapesphere/triangle.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere {

// Inertia-tensor eigenstructure of an m-triangle. lambda1 <= lambda2 are the
// in-plane eigenvalues, lambda3 = lambda1 + lambda2 = I the normal one. psi1 is
// the oriented angle from a1 to the lambda1-eigenvector u1, in [-pi/2, pi/2).
struct EigenData {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double psi1 = 0.0;
};

EigenData inertia_eigen(const MTriangle& tri);

// Inertia tensor B_X(u, v) = sum m_j (u x a_j) . (v x a_j) as a 3x3 matrix.
std::array<std::array<double, 3>, 3> inertia_tensor(const MTriangle& tri);

// Angular-momentum coordinates relative to the moving eigenframe, plus the
// precession angle of the normal vector around the fixed Omega axis.
struct FrameState {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double chi = 0.0;

    double norm2() const { return g1 * g1 + g2 * g2 + g3 * g3; }
};

// Moduli-curve data the Euler system needs at one time: eigenvalues of the
// inertia tensor plus the longitude rate and colatitude of the shape point.
struct EulerCoefficients {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double theta_dot = 0.0;
    double cos_phi = 0.0;
};

using EulerCoefficientFn = std::function<EulerCoefficients(double t)>;

// Right-hand side of the generalized Euler equations.
std::array<double, 3> euler_rhs(const FrameState& g, const EulerCoefficients& c);

// chi-rate; throws PlanarUndefined when g1^2 + g2^2 is below planar_tol * |g|^2.
double precession_rate(const FrameState& g, double lambda1, double lambda2, double omega_mag,
                       double planar_tol = 1e-14);

struct FrameSample {
    double t = 0.0;
    FrameState state;
};

struct EulerIntegrationOptions {
    double dt = 1e-3;
    double eclipse_tol = 1e-10;   // lambda1 / lambda3 below this stops integration
    bool track_precession = true;
    double planar_tol = 1e-14;
};

struct EulerIntegrationResult {
    std::vector<FrameSample> samples;
    bool eclipse_encountered = false;
    double t_stop = 0.0;
};

// Fixed-step RK4 on the Euler system along a moduli curve given by coeffs(t).
EulerIntegrationResult integrate_euler(const EulerCoefficientFn& coeffs, double omega_mag,
                                       const FrameState& g0, double t0, double t1,
                                       const EulerIntegrationOptions& opt = {});

// Moduli curve for the planar lifting problem: normalized moments and their
// rates at time t.
struct PlanarModuliSample {
    ITriple I;
    ITriple Idot;
};
using PlanarModuliFn = std::function<PlanarModuliSample(double t)>;

struct LiftOptions {
    double dt = 1e-3;
    double projection_tol = 1e-8;
    double collinear_tol = 1e-10;
};

struct LiftSample {
    double t = 0.0;
    std::array<Vec3, 3> positions{};
};

// Theorem-B reconstruction for planar motions: advances the individual vertex
// angles by quadrature of the angular velocities. The initial configuration
// must project onto the curve start (ProjectionMismatch otherwise) and must not
// be collinear (EclipseAmbiguity).
std::vector<LiftSample> lift_planar(const PlanarModuliFn& curve, double omega,
                                    const MTriangle& initial, double t0, double t1,
                                    const LiftOptions& opt = {});

// Cubic Hermite interpolant through (t_k, I_k) with derivative data Idot_k.
PlanarModuliFn hermite_moduli_curve(std::vector<double> t, std::vector<ITriple> I,
                                    std::vector<ITriple> Idot);

// Orthonormal eigenframe (u1, u2, n) of a nondegenerate triangle, u1 along the
// smallest in-plane eigenvalue. `continue_eigenframe` resolves the sign
// ambiguity against the previous frame along a motion.
struct Eigenframe {
    Vec3 u1, u2, n;
};
Eigenframe eigenframe_of(const MTriangle& tri);
Eigenframe continue_eigenframe(const MTriangle& tri, const Eigenframe& prev);

} // namespace shapesphere
