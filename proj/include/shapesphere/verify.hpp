#pragma once

#include <cstdint>
#include <vector>
#include <string>
#include <vector>

namespace shapesphere {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;      // worst measured deviation
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::vector<std::string> only; // run only criteria whose name matches
    bool inject_fault = false;     // negative control: perturb one golden value
};

// Runs the acceptance criteria and returns one result per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

std::vector<std::string> acceptance_names();

// Reference values of the three collision-curve tables on the coarse grid
// (theta0 = k pi/30, six phi stations). Cells marked with `illegible` are
// excluded from comparisons (one unreadable in the source, one misprint with
// the correct value pinned by the neighbouring quantities).
struct TableGolden {
    static constexpr double illegible = -1.0;
    std::vector<std::vector<double>> alpha, theta, theta_p;
};
const TableGolden& golden_tables();

} // namespace shapesphere
