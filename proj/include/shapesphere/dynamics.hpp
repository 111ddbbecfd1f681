#pragma once

#include <array>
#include <functional>
#include <vector>

#include "shapesphere/masses.hpp"
#include "shapesphere/ode.hpp"
#include "shapesphere/shape.hpp"
#include "shapesphere/triangle.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere {

struct SimState {
    std::array<Vec3, 3> pos{};
    std::array<Vec3, 3> vel{};

    MTriangle triangle(const MassDistribution& m) const {
        return {pos[0], pos[1], pos[2], m};
    }
};

double kinetic_energy(const SimState& s, const MassDistribution& m);
double total_energy(const SimState& s, const MassDistribution& m);
Vec3 angular_momentum(const SimState& s, const MassDistribution& m);
Vec3 center_of_mass(const SimState& s, const MassDistribution& m);
Vec3 linear_momentum(const SimState& s, const MassDistribution& m);

// Shift to the center-of-mass frame (positions and velocities).
SimState to_com_frame(const SimState& s, const MassDistribution& m);

enum class StopReason {
    Completed,
    CollisionDetected,
    StepUnderflow,
    EclipseEncountered,
    CuspDetected,
    BinaryCollisionDetected,
    MaxStepsReached,
};

const char* to_string(StopReason r);

struct TrajectorySample {
    double t = 0.0;
    SimState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    StopReason reason = StopReason::Completed;
    double t_final = 0.0;
    double energy_drift = 0.0;   // max |h(t) - h(0)|
    double angmom_drift = 0.0;   // max |Omega(t) - Omega(0)|
    long long steps = 0;
};

struct NewtonOptions {
    AdaptiveOptions ode{};
    double collision_factor = 1e-6; // stop when min r_ij < factor * initial size
    long long max_steps = 50'000'000;
    double sample_stride = 0.0; // 0: store every accepted step
};

// Direct integration of Newton's equations (any dimension via Vec3).
Trajectory integrate_newton(const SimState& initial, const MassDistribution& m, double t0,
                            double t1, const NewtonOptions& opt = {});

// --- Omega-reduced planar system in the moment coordinates -----------------

struct ReducedPlanarState {
    ITriple I;
    std::array<double, 3> Idot{};
};

// Second derivatives of the individual moments. `orientation` is the sign of
// the oriented area along the motion.
std::array<double, 3> reduced_rhs_planar(const ReducedPlanarState& rs, double omega,
                                         int orientation, const MassDistribution& m);

struct ReducedTrajectorySample {
    double t = 0.0;
    ReducedPlanarState state;
};

struct ReducedTrajectory {
    std::vector<ReducedTrajectorySample> samples;
    StopReason reason = StopReason::Completed;
};

ReducedTrajectory integrate_reduced_planar(const ReducedPlanarState& initial, double omega,
                                           int orientation, const MassDistribution& m, double t0,
                                           double t1, const NewtonOptions& opt = {});

// --- Spatial (non-planar) reduced system ------------------------------------

// Individual kinetic energies of a spatial motion split into a tangential part
// (moduli data and the normal momentum component g3) and a normal part driven
// by g1, g2 through the frame angles psi_i of the vertices.
struct SpatialKineticSplit {
    std::array<double, 3> tangential{};
    std::array<double, 3> normal{};

    double total() const {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) acc += tangential[i] + normal[i];
        return acc;
    }
};

SpatialKineticSplit spatial_kinetic_split(const ITriple& I, const std::array<double, 3>& Idot,
                                          const std::array<double, 3>& g, int orientation,
                                          const MassDistribution& m);

// Moment accelerations of the spatial reduced system (same structure as the
// planar form with the split kinetic energies).
std::array<double, 3> reduced_rhs_spatial(const ITriple& I, const std::array<double, 3>& Idot,
                                          const std::array<double, 3>& g, int orientation,
                                          const MassDistribution& m);

struct SpatialReducedSample {
    double t = 0.0;
    ITriple I;
    std::array<double, 3> Idot{};
    std::array<double, 3> g{};
};

// Integrates the coupled system (moments + generalized Euler equations).
std::vector<SpatialReducedSample> integrate_reduced_spatial(
    const ITriple& I0, const std::array<double, 3>& Idot0, const std::array<double, 3>& g0,
    int orientation, const MassDistribution& m, double t0, double t1,
    const NewtonOptions& opt = {});

// --- Omega-reduced system in spherical cone coordinates --------------------

struct SphericalState {
    double rho = 0.0, phi = 0.0, theta = 0.0;
    double rho_dot = 0.0, phi_dot = 0.0, theta_dot = 0.0;
};

struct SphericalOptions {
    double pole_threshold = 1e-3; // sin(phi) band where the longitude ODE is swapped
    LongitudeConvention convention{};
};

// (rho_dd, phi_dd, theta_dd); throws PoleChartSingularity when sin(phi) is
// below the threshold (the integrator swaps in the energy integral there).
// For omega != 0 the shape equations carry the workless Coriolis coupling of
// the mechanical connection (curvature 2 dA); it vanishes for omega = 0.
std::array<double, 3> reduced_rhs_spherical(const SphericalState& s, double h, double omega,
                                            const MassDistribution& m,
                                            const SphericalOptions& opt = {});

// Energy integral of the reduced planar dynamics:
// U + h - Omega^2/(2 rho^2) - [rho_dot^2/2 + rho^2/8 (phi_dot^2 + sin^2 phi theta_dot^2)].
double spherical_energy_residual(const SphericalState& s, double h, double omega,
                                 const MassDistribution& m,
                                 const SphericalOptions& opt = {});

struct SphericalTrajectorySample {
    double t = 0.0;
    SphericalState state;
};

std::vector<SphericalTrajectorySample> integrate_reduced_spherical(
    const SphericalState& initial, double h, double omega, const MassDistribution& m, double t0,
    double t1, const NewtonOptions& oopt = {}, const SphericalOptions& sopt = {});

// --- Jacobi (physical) metric helpers ---------------------------------------

struct RayLength {
    double value = 0.0;
    bool finite = true;
};

// Length of the ray segment from the cone vertex to the boundary U = -h in the
// physical metric; infinite for h >= 0.
RayLength ray_length(const ShapePoint& p, double h, const MassDistribution& m);

// Closed form (pi/2) U*(p) / sqrt(|h|) via the sin^2 substitution (test oracle).
double ray_length_closed_form(const ShapePoint& p, double h, const MassDistribution& m);

// --- Cone-surface geodesic system (zero angular momentum) ------------------

struct GeodesicOdeEval {
    double dalpha_dsigma = 0.0; // sigma: arc length on S^2(1/2)
    double required_curvature = 0.0; // K_g^* demanded by the normal equation
};

// tau_hat: unit tangent of the shape curve at p in the (phi, theta) chart of
// the magnified sphere; components (tangential, normal) derivatives of ln U*
// are taken on S^2(1/2).
GeodesicOdeEval geodesic_ode_rhs(double alpha, const ShapePoint& p, const Vec3& tau_hat,
                                 double rho, double h, const MassDistribution& m,
                                 double sin_alpha_tol = 1e-12);

} // namespace shapesphere
