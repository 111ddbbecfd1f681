#pragma once

#include <string>
#include <vector>

namespace shapesphere::schemas {

// Canonical CSV column layouts (golden fixtures for the writers).
inline const std::vector<std::string>& trajectory() {
    static const std::vector<std::string> v{
        "t",   "x1",  "y1",  "z1",  "x2",  "y2",  "z2",  "x3",  "y3",
        "z3",  "vx1", "vy1", "vz1", "vx2", "vy2", "vz2", "vx3", "vy3",
        "vz3", "I1",  "I2",  "I3",  "rho", "phi", "theta", "h", "Omega"};
    return v;
}

inline const std::vector<std::string>& reduced() {
    static const std::vector<std::string> v{"t",     "I1",    "I2",    "I3",  "I1dot",
                                            "I2dot", "I3dot", "rho",   "phi", "theta"};
    return v;
}

inline const std::vector<std::string>& collision_curve() {
    static const std::vector<std::string> v{"phi", "theta", "dtheta_dphi", "alpha"};
    return v;
}

inline const std::vector<std::string>& shape_map() {
    static const std::vector<std::string> v{"I1", "I2", "I3", "rho", "phi", "theta"};
    return v;
}

inline const std::vector<std::string>& potential_grid() {
    static const std::vector<std::string> v{"phi", "theta", "U", "dU_dphi", "dU_dtheta"};
    return v;
}

} // namespace shapesphere::schemas
