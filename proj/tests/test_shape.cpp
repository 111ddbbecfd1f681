#include <doctest.h>

#include <cmath>
#include <random>

#include "shapesphere/frame.hpp"
#include "shapesphere/potential.hpp"
#include "shapesphere/shape.hpp"
#include "test_common.hpp"

using namespace shapesphere;
using test_common::random_masses;
using test_common::random_planar_triangle;

TEST_CASE("pole condition: I_j = m_j^* maps to phi = 0") {
    auto g = test_common::rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const MassDistribution m = random_masses(g);
        const ITriple t(m.dual(0), m.dual(1), m.dual(2));
        const ShapePoint p = itriple_to_shape(t, +1, m);
        CHECK(p.phi == doctest::Approx(0.0).epsilon(1e-7));
        CHECK(p.at_pole);
    }
}

TEST_CASE("binary collision points round-trip") {
    auto g = test_common::rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const MassDistribution m = random_masses(g);
        const auto bl = binary_longitudes(m, {});
        for (int i = 0; i < 3; ++i) {
            ShapePoint b;
            b.phi = M_PI / 2.0;
            b.theta = bl[i];
            const ITriple t = shape_to_itriple(b, m);
            // binary collision b_{jk} at unit size: I_i = 1 - m_i
            CHECK(t.I(i) == doctest::Approx(1.0 - m[i]).epsilon(1e-12));
            CHECK(t.I(i + 1) ==
                  doctest::Approx(m[i + 1] * m[i] / (1.0 - m[i])).epsilon(1e-12));
            CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("shape <-> ITriple round-trip on random points") {
    auto g = test_common::rng(7);
    std::uniform_real_distribution<double> uphi(0.05, M_PI - 0.05);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    for (int rep = 0; rep < 10000; ++rep) {
        const MassDistribution m = random_masses(g);
        ShapePoint p;
        p.phi = uphi(g);
        // the moment chart is degenerate in phi exactly on the equator
        if (std::abs(p.phi - M_PI / 2.0) < 1e-3) p.phi += 2e-3;
        p.theta = uth(g);
        const ITriple t = shape_to_itriple(p, m);
        CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-14));
        const int orientation = (p.phi <= M_PI / 2.0) ? +1 : -1;
        const ShapePoint q = itriple_to_shape(t, orientation, m);
        CHECK(std::abs(q.phi - p.phi) < 1e-12);
        CHECK(std::abs(std::remainder(q.theta - p.theta, 2.0 * M_PI)) < 1e-12);
    }
}

TEST_CASE("equal-mass Euler configuration sits on the equator opposite b_i") {
    const MassDistribution m = MassDistribution::equal();
    // collinear with body 3 at the mass center of 1 and 2: Euler config e3
    const MTriangle tri = MTriangle::planar(-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, m);
    const ShapePoint p = itriple_to_shape(moments(tri), +1, m);
    CHECK(p.phi == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    const auto sp = special_points(m);
    // e3 is antipodal to b12 for equal masses
    const double want = std::remainder(sp.binary_theta[2] + M_PI, 2.0 * M_PI);
    CHECK(std::abs(std::remainder(p.theta - want, 2.0 * M_PI)) < 1e-9);
    CHECK(std::abs(std::remainder(sp.euler_theta[2] - want, 2.0 * M_PI)) < 1e-9);
}

TEST_CASE("triangle_to_shape agrees with the moment chart on random triangles") {
    auto g = test_common::rng(11);
    int used = 0;
    while (used < 400) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 5e-3);
        const ModuliPoint mp = triangle_to_shape(tri);
        if (mp.shape.at_pole) continue;
        ++used;
        const int orientation = tri.signed_area() >= 0 ? +1 : -1;
        const ShapePoint q = itriple_to_shape(moments(tri), orientation, m);
        CHECK(std::abs(mp.shape.phi - q.phi) < 1e-10);
        if (!q.at_pole)
            CHECK(std::abs(std::remainder(mp.shape.theta - q.theta, 2.0 * M_PI)) < 1e-10);
        CHECK(mp.rho == doctest::Approx(tri.rho()).epsilon(1e-14));
    }
}

TEST_CASE("B = 0 frame branch: isosceles equal-mass triangle has psi1 in {0, -pi/2}") {
    const MassDistribution m = MassDistribution::equal();
    // |a2| = |a3| isosceles: B vanishes per the chart analysis
    const MTriangle tri = MTriangle::planar(0.0, 1.0, -0.8, -0.5, 0.8, -0.5, m);
    const EigenData e = inertia_eigen(tri);
    const bool at_zero = std::abs(e.psi1) < 1e-9;
    const bool at_half = std::abs(e.psi1 + M_PI / 2.0) < 1e-9;
    CHECK((at_zero || at_half));
}

TEST_CASE("shape distance: identical points, pole-to-collision, equator gap") {
    auto g = test_common::rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const MassDistribution m = random_masses(g);
        ShapePoint p;
        p.phi = 0.7;
        p.theta = 1.1;
        CHECK(shape_distance(p, p) == doctest::Approx(0.0));
        // pole to any binary collision point: pi/4
        const auto bl = binary_longitudes(m, {});
        for (int i = 0; i < 3; ++i) {
            ShapePoint b;
            b.phi = M_PI / 2.0;
            b.theta = bl[i];
            CHECK(shape_distance(ShapePoint::pole(), b) ==
                  doctest::Approx(M_PI / 4.0).epsilon(1e-13));
        }
        // two equator points: half the longitude gap
        ShapePoint e1, e2;
        e1.phi = e2.phi = M_PI / 2.0;
        e1.theta = 0.3;
        e2.theta = 1.7;
        CHECK(shape_distance(e1, e2) == doctest::Approx(0.5 * (1.7 - 0.3)).epsilon(1e-13));
    }
}

TEST_CASE("distance formula in I-coordinates matches the unit-vector arccos") {
    auto g = test_common::rng(17);
    std::uniform_real_distribution<double> uphi(0.05, M_PI / 2.0 - 0.05);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    for (int rep = 0; rep < 500; ++rep) {
        const MassDistribution m = random_masses(g);
        ShapePoint p, q;
        p.phi = uphi(g);
        p.theta = uth(g);
        q.phi = uphi(g);
        q.theta = uth(g);
        const double d1 = shape_distance(p, q);
        const double d2 = shape_distance_itriple(shape_to_itriple(p, m),
                                                 shape_to_itriple(q, m), m);
        CHECK(std::abs(d1 - d2) < 1e-10);
    }
}

TEST_CASE("special points: Lagrange point, realizability, mass round-trip") {
    auto g = test_common::rng(19);
    for (int rep = 0; rep < 50; ++rep) {
        const MassDistribution m = random_masses(g);
        const SpecialPoints sp = special_points(m);
        // unit norm
        CHECK(sp.lagrange_north.norm() == doctest::Approx(1.0).epsilon(1e-12));
        // masses recoverable from the beta angles
        const MassDistribution m2 = masses_from_beta(sp.beta);
        for (int i = 0; i < 3; ++i) CHECK(m2[i] == doctest::Approx(m[i]).epsilon(1e-10));
        // the Lagrange point carries the equilateral moments
        const ITriple t = shape_to_itriple(ShapePoint::from_unit(sp.lagrange_north), m);
        for (int i = 0; i < 3; ++i) {
            const double want = 1.0 - m[i] - m.mhat(i) / m.mhat();
            CHECK(t.I(i) == doctest::Approx(want).epsilon(1e-10));
        }
    }
    // orientation of the y coordinate and the equal-mass degeneration
    const SpecialPoints a = special_points(MassDistribution(0.2, 0.5, 0.3));
    CHECK(a.lagrange_north.y > 0.0); // m2 > m3
    const SpecialPoints b = special_points(MassDistribution::equal());
    CHECK(b.lagrange_north.z == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Lagrange point is the hemisphere minimum of U*") {
    auto g = test_common::rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const MassDistribution m = random_masses(g, 0.15);
        const SpecialPoints sp = special_points(m);
        // gradient vanishes there, and nearby samples are all larger
        const Vec3 grad = u_star_gradient_vector(sp.lagrange_north, m);
        CHECK(grad.norm() < 1e-9);
        const double u0 = u_star_vector(sp.lagrange_north, m);
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        for (int k = 0; k < 50; ++k) {
            Vec3 q = sp.lagrange_north + Vec3{u(g), u(g), u(g)};
            q = q / q.norm();
            if (q.z < 0.05) continue;
            CHECK(u_star_vector(q, m) >= u0 - 1e-12);
        }
    }
}

TEST_CASE("side lengths from the unit-vector picture match mutual distances") {
    auto g = test_common::rng(29);
    for (int rep = 0; rep < 200; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m);
        const ITriple t = moments(tri);
        const ITriple tn = t.normalized();
        const int orientation = tri.signed_area() >= 0 ? +1 : -1;
        const ShapePoint p = itriple_to_shape(tn, orientation, m);
        const auto s_sphere = sides_from_unit(p, m);
        const auto s_direct = mutual_distances(tn, m);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(s_sphere[i] - s_direct[i]) < 1e-12);
        // side3 identity: sum (1 - m_i) sin^2 sigma_i = 1
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double c2s = tn.I(i) / m.dual(i) - 1.0;
            acc += (1.0 - m[i]) * 0.5 * (1.0 - c2s);
        }
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("metric isometry: coordinate form vs sphere pullback") {
    auto g = test_common::rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int used = 0;
    while (used < 1000) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 2e-2);
        ITriple t = moments(tri).normalized();
        const double dI1 = u(g), dI2 = u(g);
        double direct, pullback;
        try {
            direct = dsigma2_coordinates(t.I1, t.I2, dI1, dI2, m);
            pullback = dsigma2_sphere_pullback(t.I1, t.I2, dI1, dI2, m);
        } catch (const EclipseSingularity&) {
            continue;
        }
        ++used;
        CHECK(std::abs(direct - pullback) <= 1e-8 * std::abs(pullback));
    }
}

TEST_CASE("disk chart: affine transform normalizes Q and the metric") {
    auto g = test_common::rng(37);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int used = 0;
    while (used < 300) {
        const MassDistribution m = random_masses(g);
        // skip the psi0 indeterminacy neighborhood at equal masses
        if (std::abs(m[0] - m[1]) < 0.05 && std::abs(m[0] * m[1] - m[2]) < 0.05) continue;
        const MTriangle tri = random_planar_triangle(g, m, 2e-2);
        const ITriple t = moments(tri).normalized();
        const DiskChart ch = disk_chart(m);
        const auto xy = ch.to_disk(t.I1, t.I2);
        // Q* = mbar (1 - x^2 - y^2)
        const double Q = t.Q(m);
        const double want = m.mbar() * (1.0 - xy[0] * xy[0] - xy[1] * xy[1]);
        if (want < 1e-6) continue;
        ++used;
        CHECK(Q == doctest::Approx(want).epsilon(1e-9));
        // inverse chart round-trip
        const auto back = ch.to_moments(xy[0], xy[1]);
        CHECK(back[0] == doctest::Approx(t.I1).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(t.I2).epsilon(1e-12));
        // metric: push the tangent vector through the affine map
        const double dI1 = u(g), dI2 = u(g);
        const double cp = std::cos(ch.psi0), sp = std::sin(ch.psi0);
        const double dx = (cp * dI1 + sp * dI2) / ch.sx;
        const double dy = (-sp * dI1 + cp * dI2) / ch.sy;
        const double direct = dsigma2_coordinates(t.I1, t.I2, dI1, dI2, m);
        const double disk = dsigma2_disk(xy[0], xy[1], dx, dy);
        CHECK(std::abs(direct - disk) <= 1e-8 * std::abs(disk));
    }
}

TEST_CASE("eigen data: closed forms, dense oracle, and the eigen2 chart form") {
    auto g = test_common::rng(41);
    for (int rep = 0; rep < 300; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 5e-3);
        const EigenData e = inertia_eigen(tri);
        const double I = tri.I();
        CHECK(e.lambda1 + e.lambda2 == doctest::Approx(I).epsilon(1e-12));
        const double delta = tri.signed_area();
        CHECK(e.lambda1 * e.lambda2 ==
              doctest::Approx(4.0 * m.mbar() * delta * delta).epsilon(1e-10));
        // eigen2: lambda_{1,2} = I/2 (1 -+ sin phi)
        const ModuliPoint mp = triangle_to_shape(tri);
        CHECK(e.lambda1 ==
              doctest::Approx(0.5 * I * (1.0 - std::sin(mp.shape.phi))).epsilon(1e-9));
        // u1 = cos psi1 e1 + sin psi1 e2 must be a lambda1-eigenvector
        const Vec3 e1 = tri.a(0).normalized();
        Vec3 e2raw = tri.a(1) - tri.a(1).dot(e1) * e1;
        const Vec3 e2 = e2raw.normalized();
        const Vec3 u1 = std::cos(e.psi1) * e1 + std::sin(e.psi1) * e2;
        const auto B = inertia_tensor(tri);
        Vec3 Bu{B[0][0] * u1.x + B[0][1] * u1.y + B[0][2] * u1.z,
                B[1][0] * u1.x + B[1][1] * u1.y + B[1][2] * u1.z,
                B[2][0] * u1.x + B[2][1] * u1.y + B[2][2] * u1.z};
        CHECK((Bu - e.lambda1 * u1).norm() < 1e-8 * std::max(1.0, I));
    }
}

TEST_CASE("collinear: lambda1 = 0, lambda2 = lambda3 = I") {
    const MassDistribution m(0.25, 0.35, 0.4);
    const MTriangle tri = MTriangle::planar(-1.0, 0.0, 0.4, 0.0, 0.9, 0.0, m);
    const EigenData e = inertia_eigen(tri);
    CHECK(std::abs(e.lambda1) < 1e-12);
    CHECK(e.lambda2 == doctest::Approx(tri.I()).epsilon(1e-12));
}

TEST_CASE("Lagrange-point longitude offsets from the spherical cosine law") {
    auto g = test_common::rng(53);
    for (int rep = 0; rep < 30; ++rep) {
        const MassDistribution m = random_masses(g, 0.12);
        if (m.is_equal(1e-3)) continue;
        const SpecialPoints sp = special_points(m);
        const double zh = sp.lagrange_north.z;
        const double sinph = std::sqrt(1.0 - zh * zh);
        if (sinph < 1e-6) continue;
        const double theta_hat = std::atan2(sp.lagrange_north.y, sp.lagrange_north.x);
        const double mhat = m.mhat(), mbar = m.mbar();
        const double denom = std::sqrt(1.0 - 3.0 * mbar / (mhat * mhat));
        for (int i = 0; i < 3; ++i) {
            const double want =
                (1.0 - 2.0 * m.mhat(i) / ((1.0 - m[i]) * mhat)) / denom;
            const double got = std::cos(theta_hat - sp.binary_theta[i]);
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}
