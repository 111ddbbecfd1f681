#pragma once

#include <cstddef>
#include <string>

#include "shapesphere/masses.hpp"

namespace shapesphere::batch {

// Data-parallel kernels over arrays of unit vectors on the shape sphere.
// A scalar reference implementation and an AVX2 variant are built side by
// side; the active one is picked at runtime (override with
// SHAPESPHERE_SIMD=scalar|avx2).

struct PotentialCoefficients {
    // k_i and the equator positions of the binary collision points
    double k[3];
    double bx[3];
    double by[3];

    static PotentialCoefficients from_masses(const MassDistribution& m, double theta_offset = 0.0);
};

// U*(p) for n unit vectors; gx/gy/gz (optional, pass nullptr) receive the
// tangential gradient.
using UStarBatchFn = void (*)(const PotentialCoefficients& c, const double* px, const double* py,
                              const double* pz, std::size_t n, double* value, double* gx,
                              double* gy, double* gz);

// Geodesic curvature of the equal-mass gradient lines at n unit vectors
// (NaN at points too close to a critical point).
using KgBatchFn = void (*)(const double* px, const double* py, const double* pz, std::size_t n,
                           double* kg);

UStarBatchFn u_star_batch();
KgBatchFn gradient_curvature_batch();

// Force a particular backend (used by the equivalence tests).
UStarBatchFn u_star_batch_scalar();
KgBatchFn gradient_curvature_batch_scalar();
UStarBatchFn u_star_batch_avx2();     // nullptr when unsupported
KgBatchFn gradient_curvature_batch_avx2();

const std::string& active_backend();

} // namespace shapesphere::batch
