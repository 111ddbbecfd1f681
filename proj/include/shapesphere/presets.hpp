#pragma once

#include <string>
#include <vector>

#include "shapesphere/dynamics.hpp"

namespace shapesphere {

struct Preset {
    std::string name;
    MassDistribution masses = MassDistribution::equal();
    SimState state;
    double h = 0.0;
    double omega = 0.0;      // z-component of the angular momentum
    double t_char = 1.0;     // characteristic time (orbit period scale)
    double t_collision = 0.0; // side of the time axis where a collision waits (hint)
};

// Equilateral relative equilibrium (circular Lagrange orbit) for the masses.
Preset preset_lagrange_circular(const MassDistribution& m);

// Same orbit with a deterministic planar velocity perturbation.
Preset preset_perturbed_lagrange(const MassDistribution& m, double eps = 1e-2);

// Circular orbit with a small out-of-plane tilt (non-planar test motion).
// Use a Routh-stable mass ratio so the relative equilibrium persists.
Preset preset_spatial_tilt(const MassDistribution& m, double eps = 6e-2);

// A mass ratio satisfying the 27(m1 m2 + m2 m3 + m3 m1) < 1 stability bound.
MassDistribution routh_stable_masses();

// Equal-mass isosceles h = 0 configuration whose backward continuation reaches
// a triple collision at t0 ~ -1.0228 (shooting angle beta0 ~ 0.10865).
Preset preset_isosceles_beta0();
double isosceles_alpha0(); // alpha(pi/2) of the theta = 0 collision curve
double isosceles_beta0();

// Equal-mass collinear h = 0 state on the Euler-type collision manifold,
// initialized from the equator series at arc parameter s0.
Preset preset_collinear_explosion(double s0 = 0.02);

Preset preset_by_name(const std::string& name, const MassDistribution& m);
std::vector<std::string> preset_names();

} // namespace shapesphere
