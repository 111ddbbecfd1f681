#include <doctest.h>

#include <cmath>

#include "shapesphere/taylor.hpp"
#include "shapesphere/triangle.hpp"
#include "test_common.hpp"

using namespace shapesphere;
using test_common::random_masses;
using test_common::random_planar_triangle;

namespace {

MTriangle equilateral_equal_mass() {
    // equilateral, equal masses, I = 1 (circumradius 1)
    const MassDistribution m = MassDistribution::equal();
    return MTriangle::planar(1.0, 0.0, -0.5, std::sqrt(3.0) / 2.0, -0.5, -std::sqrt(3.0) / 2.0,
                             m);
}

} // namespace

TEST_CASE("moments of equilateral equal-mass triangle") {
    const MTriangle tri = equilateral_equal_mass();
    const ITriple t = moments(tri);
    CHECK(t.I1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(t.I2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(t.I3 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(t.total() == doctest::Approx(tri.I()).epsilon(1e-14));
}

TEST_CASE("moments of the one-point triangle vanish") {
    const MassDistribution m(0.5, 0.3, 0.2);
    const MTriangle tri = MTriangle::planar(0, 0, 0, 0, 0, 0, m);
    const ITriple t = moments(tri);
    CHECK(t.I1 == 0.0);
    CHECK(t.I2 == 0.0);
    CHECK(t.I3 == 0.0);
}

TEST_CASE("moments match direct arithmetic for random triangles") {
    auto g = test_common::rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const MassDistribution m(0.5, 1.0 / 3.0, 1.0 / 6.0);
        const MTriangle tri = random_planar_triangle(g, m);
        const ITriple t = moments(tri);
        for (int i = 0; i < 3; ++i)
            CHECK(t.I(i) == doctest::Approx(m[i] * tri.a(i).norm2()).epsilon(1e-14));
    }
}

TEST_CASE("mutual distances: binary collision shape has zero side") {
    const MassDistribution m(0.4, 0.35, 0.25);
    // b_23 moments: I_2 = m2 m1/(1-m1) etc. with bodies 2 and 3 coincident
    const double I1 = 1.0 - m[0];
    const double I2 = m[1] * m[0] / (1.0 - m[0]);
    const double I3 = m[2] * m[0] / (1.0 - m[0]);
    const auto s = mutual_distances(ITriple(I1, I2, I3), m);
    CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mutual distances: equal-mass equilateral sides are sqrt(3)") {
    const MassDistribution m = MassDistribution::equal();
    const auto s = mutual_distances(ITriple(1.0 / 3, 1.0 / 3, 1.0 / 3), m);
    for (int i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(s[0] == doctest::Approx(1.0 / std::sqrt(m.mhat())).epsilon(1e-14));
}

TEST_CASE("Lagrange identity for the total moment of inertia") {
    auto g = test_common::rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m);
        const ITriple t = moments(tri);
        const auto s = mutual_distances(t, m);
        double lag = 0.0;
        for (int i = 0; i < 3; ++i) lag += m.mhat(i) * s[i] * s[i];
        CHECK(std::abs(lag - t.total()) < 1e-12 * std::max(1.0, t.total()));
        // dual-mass form of the identity
        double dual = 0.0;
        for (int i = 0; i < 3; ++i) dual += m.dual(i) * t.C(i, m) / m.mhat(i);
        CHECK(std::abs(dual - t.total()) < 1e-12 * std::max(1.0, t.total()));
    }
}

TEST_CASE("mutual_distances round-trips the sides of the input triangle") {
    auto g = test_common::rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m);
        const auto s = mutual_distances(moments(tri), m);
        CHECK(std::abs(s[0] - tri.r(1, 2)) < 1e-12);
        CHECK(std::abs(s[1] - tri.r(0, 2)) < 1e-12);
        CHECK(std::abs(s[2] - tri.r(0, 1)) < 1e-12);
    }
}

TEST_CASE("Ceva invariants: collinear triangle") {
    const MassDistribution m(0.3, 0.3, 0.4);
    const MTriangle tri = MTriangle::planar(-1, 0, 0.5, 0, 1.5, 0, m);
    const auto ci = ceva_invariants(tri);
    CHECK(ci.area == doctest::Approx(0.0));
    CHECK(ci.Q == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isnan(ci.central_angles[0]));
}

TEST_CASE("Ceva invariants: equal-mass equilateral attains the maximal area") {
    const MTriangle tri = equilateral_equal_mass();
    const auto ci = ceva_invariants(tri);
    const double mbar = tri.masses().mbar();
    CHECK(ci.area == doctest::Approx(1.0 / (4.0 * std::sqrt(mbar))).epsilon(1e-13));
}

TEST_CASE("Ceva-Heron formula and sine ratios on random triangles") {
    auto g = test_common::rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 1e-2);
        const auto ci = ceva_invariants(tri);
        const double mbar = m.mbar();
        // Q vs 16 mbar^2 Delta^2 with Delta from the cross product
        const double delta = tri.signed_area();
        CHECK(ci.Q ==
              doctest::Approx(16.0 * mbar * mbar * delta * delta).epsilon(1e-10));
        // area law
        for (int i = 0; i < 3; ++i)
            CHECK(ci.sub_areas[i] == doctest::Approx(m[i] * delta).epsilon(1e-12));
        // Ceva-sine ratios agree across the three indices
        const double common = 2.0 * ci.area /
                              (tri.a(0).norm() * tri.a(1).norm() * tri.a(2).norm());
        for (int i = 0; i < 3; ++i) {
            const double ratio = std::sin(ci.central_angles[i]) / (m[i] * tri.a(i).norm());
            CHECK(ratio == doctest::Approx(common).epsilon(1e-10));
        }
        // central angles of a triangle containing its center of mass sum to 2 pi
        const double sum =
            ci.central_angles[0] + ci.central_angles[1] + ci.central_angles[2];
        CHECK(sum == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    }
}

TEST_CASE("torques: equilateral -> all zero; isosceles -> t1 = 0") {
    const MTriangle eq = equilateral_equal_mass();
    const auto te = torques(eq);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(te[i]) < 1e-14);

    const MassDistribution m(0.2, 0.5, 0.3);
    // r12 = r13 by reflecting bodies 2 and 3 across the axis through body 1
    const MTriangle iso = MTriangle::planar(0.0, 1.2, -0.7, -0.4, 0.7, -0.4, m);
    CHECK(iso.r(0, 1) == doctest::Approx(iso.r(0, 2)).epsilon(1e-14));
    const auto ti = torques(iso);
    CHECK(std::abs(ti[0]) < 1e-14);
}

TEST_CASE("torque sum equals the total torque of the Newtonian forces") {
    auto g = test_common::rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const MassDistribution m = random_masses(g);
        const MTriangle tri = random_planar_triangle(g, m, 1e-2);
        const auto t = torques(tri);
        const auto f = newton_forces(tri);
        double direct = 0.0;
        for (int i = 0; i < 3; ++i) direct += tri.a(i).cross(f[i]).z;
        CHECK(t[0] + t[1] + t[2] == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("torques at a binary collision throw") {
    const MassDistribution m = MassDistribution::equal();
    const MTriangle tri = MTriangle::planar(0.5, 0.5, 0.5, 0.5, -1.0, -1.0, m);
    CHECK_THROWS_AS(torques(tri), CollisionSingularity);
}

TEST_CASE("Taylor arithmetic basics") {
    const int N = 12;
    const Taylor x = Taylor::variable(N);
    // sqrt(1 + x)^2 = 1 + x
    const Taylor s = (1.0 + x).sqrt();
    const Taylor sq = s * s;
    CHECK(sq[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq[1] == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 2; k <= N; ++k) CHECK(std::abs(sq[k]) < 1e-14);
    // sin^2 + cos^2 = 1
    auto [sn, cn] = Taylor::sincos0(x * 0.7);
    const Taylor one = sn * sn + cn * cn;
    CHECK(one[0] == doctest::Approx(1.0));
    for (int k = 1; k <= N; ++k) CHECK(std::abs(one[k]) < 1e-14);
    // reversion: f = x + x^2, g = f^{-1}, f(g(x)) = x
    Taylor f(N);
    f.at(1) = 1.0;
    f.at(2) = 1.0;
    const Taylor ginv = f.revert();
    const Taylor comp = f.compose(ginv);
    CHECK(comp[1] == doctest::Approx(1.0));
    for (int k = 2; k <= N; ++k) CHECK(std::abs(comp[k]) < 1e-12);
    // pow: (1 + x)^{-1/2} coefficients
    const Taylor p = (1.0 + x).pow(-0.5);
    CHECK(p[1] == doctest::Approx(-0.5));
    CHECK(p[2] == doctest::Approx(0.375));
}

TEST_CASE("error paths across the modules") {
    const MassDistribution m = MassDistribution::equal();
    // unphysical ITriple: negative squared distance
    // I_1 above (1 - m_1) I cannot come from any triangle
    CHECK_THROWS_AS(
        mutual_distances(ITriple(0.95, 0.03, 0.02), MassDistribution(0.5, 0.25, 0.25)),
        NegativeSquaredDistance);
    // collinear angle extraction
    const MTriangle flat = MTriangle::planar(-1.0, 0.0, 0.3, 0.0, 0.9, 0.0, m);
    CHECK_THROWS_AS(central_angles(flat), DegenerateTriangle);
    CHECK_NOTHROW(ceva_invariants(flat)); // areas stay available
}
