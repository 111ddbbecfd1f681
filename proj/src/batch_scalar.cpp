#include <cmath>

#include "shapesphere/batch.hpp"
#include "shapesphere/shape.hpp"

namespace shapesphere::batch {

PotentialCoefficients PotentialCoefficients::from_masses(const MassDistribution& m,
                                                         double theta_offset) {
    PotentialCoefficients c{};
    const auto btheta = binary_longitudes(m, LongitudeConvention{theta_offset});
    for (int i = 0; i < 3; ++i) {
        c.k[i] = 2.0 * std::pow(m.mhat(i), 1.5) / std::sqrt(1.0 - m[i]);
        c.bx[i] = std::cos(btheta[i]);
        c.by[i] = std::sin(btheta[i]);
    }
    return c;
}

namespace detail {

void u_star_scalar(const PotentialCoefficients& c, const double* px, const double* py,
                   const double* pz, std::size_t n, double* value, double* gx, double* gy,
                   double* gz) {
    for (std::size_t j = 0; j < n; ++j) {
        const double x = px[j], y = py[j], z = pz[j];
        double u = 0.0, Bx = 0.0, By = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d2 = 2.0 * (1.0 - (x * c.bx[i] + y * c.by[i]));
            const double d = std::sqrt(d2);
            const double inv = 1.0 / d;
            u += c.k[i] * inv;
            const double inv3 = inv / d2;
            Bx += c.k[i] * inv3 * c.bx[i];
            By += c.k[i] * inv3 * c.by[i];
        }
        value[j] = u;
        if (gx) {
            const double bp = Bx * x + By * y;
            gx[j] = Bx - bp * x;
            gy[j] = By - bp * y;
            gz[j] = -bp * z;
        }
    }
}

void kg_scalar(const double* px, const double* py, const double* pz, std::size_t n, double* kg) {
    const double k = std::sqrt(2.0) / 3.0;
    const double bx[3] = {0.5, 0.5, -1.0};
    const double by[3] = {-std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const double x = px[j], y = py[j], z = pz[j];
        double e[3], f[3], Bx = 0.0, By = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d2 = 2.0 * (1.0 - (x * bx[i] + y * by[i]));
            const double d = std::sqrt(d2);
            e[i] = 1.0 / (d2 * d);
            Bx += k * e[i] * bx[i];
            By += k * e[i] * by[i];
        }
        const double bp = Bx * x + By * y;
        const double gx = Bx - bp * x, gy = By - bp * y, gz = -bp * z;
        const double gn = std::sqrt(gx * gx + gy * gy + gz * gz);
        // p x B with B in the equator plane
        const double cx = -z * By, cy = z * Bx, cz = x * By - y * Bx;
        for (int i = 0; i < 3; ++i) {
            const double qx = -z * by[i], qy = z * bx[i], qz = x * by[i] - y * bx[i];
            const double d2 = 2.0 * (1.0 - (x * bx[i] + y * by[i]));
            const double d5 = d2 * d2 * std::sqrt(d2);
            f[i] = 3.0 * std::sqrt(2.0) / d5 * (cx * qx + cy * qy + cz * qz);
        }
        const double atilde = (e[0] * f[1] - e[1] * f[0]) + (e[1] * f[2] - e[2] * f[1]) +
                              (e[2] * f[0] - e[0] * f[2]);
        kg[j] = std::sqrt(6.0) / 18.0 * z * atilde / (gn * gn * gn);
    }
}

} // namespace detail

UStarBatchFn u_star_batch_scalar() { return &detail::u_star_scalar; }
KgBatchFn gradient_curvature_batch_scalar() { return &detail::kg_scalar; }

} // namespace shapesphere::batch
