#include <doctest.h>

#include <cmath>

#include "shapesphere/collision.hpp"
#include "shapesphere/config.hpp"
#include "shapesphere/schemas.hpp"
#include "shapesphere/verify.hpp"

using namespace shapesphere;

TEST_CASE("config: canonical serialization is a fixed point") {
    const std::string messy =
        "# a comment\n"
        "[run]\n"
        "  threads =  4\n"
        "seed= 99\n"
        "\n"
        "[masses]\n"
        "m1 = 0.5\n"
        "m3 = 0.2\n"
        "m2 = 0.3\n";
    const RunConfig cfg = RunConfig::parse(messy);
    CHECK(cfg.get_int("run.seed", 0) == 99);
    CHECK(cfg.get_double("masses.m2", 0.0) == doctest::Approx(0.3));
    const std::string canon = RunConfig::parse(messy).serialize();
    CHECK(RunConfig::parse(canon).serialize() == canon);
    // keys sorted within sections, sections sorted
    CHECK(canon.find("[masses]") < canon.find("[run]"));
    CHECK(canon.find("m1") < canon.find("m2"));
    const MassDistribution m = cfg.masses();
    CHECK(m[0] == doctest::Approx(0.5));
}

TEST_CASE("config: malformed input raises ConfigError") {
    CHECK_THROWS_AS(RunConfig::parse("[broken\nkey = 1\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("novalue\n"), ConfigError);
}

TEST_CASE("table sweep is deterministic and thread-count independent") {
    std::vector<double> theta0;
    for (int k = 0; k <= 4; ++k) theta0.push_back(k * M_PI / 30.0);
    const auto cols = collision::table_columns();
    const auto a = collision::sweep_tables(theta0, cols, 1);
    const auto b = collision::sweep_tables(theta0, cols, 3);
    for (size_t r = 0; r < theta0.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) {
            CHECK(a.alpha[r][c] == b.alpha[r][c]);
            CHECK(a.theta[r][c] == b.theta[r][c]);
            CHECK(a.theta_p[r][c] == b.theta_p[r][c]);
        }
}

TEST_CASE("verify: negative control fails exactly the perturbed criterion") {
    VerifyOptions opt;
    opt.only = {"table-reproduction"};
    opt.inject_fault = true;
    const auto bad = run_acceptance(opt);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].name == "table-reproduction");
    CHECK_FALSE(bad[0].pass);

    opt.inject_fault = false;
    const auto good = run_acceptance(opt);
    REQUIRE(good.size() == 1);
    CHECK(good[0].pass);
}

TEST_CASE("verify: --only filter selects criteria by substring") {
    VerifyOptions opt;
    opt.only = {"metric-isometry"};
    const auto res = run_acceptance(opt);
    REQUIRE(res.size() == 1);
    CHECK(res[0].name == "metric-isometry");
    CHECK(res[0].pass);
}

TEST_CASE("golden CSV schemas") {
    CHECK(schemas::trajectory().size() == 27);
    CHECK(schemas::trajectory().front() == "t");
    CHECK(schemas::trajectory().back() == "Omega");
    CHECK(schemas::reduced().size() == 10);
    CHECK(schemas::collision_curve() ==
          std::vector<std::string>{"phi", "theta", "dtheta_dphi", "alpha"});
    CHECK(schemas::shape_map().size() == 6);
    CHECK(schemas::potential_grid().size() == 5);
}

TEST_CASE("golden tables: illegible markers are confined to the known cells") {
    const TableGolden& g = golden_tables();
    int hidden = 0;
    for (const auto& row : g.alpha)
        for (double v : row)
            if (v == TableGolden::illegible) ++hidden;
    CHECK(hidden == 2); // one unreadable cell, one documented misprint
    for (const auto& row : g.theta)
        for (double v : row) CHECK(v != TableGolden::illegible);
    for (const auto& row : g.theta_p)
        for (double v : row) CHECK(v != TableGolden::illegible);
}
