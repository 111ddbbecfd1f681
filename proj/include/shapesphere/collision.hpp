#pragma once

#include <array>
#include <functional>
#include <vector>

#include "shapesphere/dynamics.hpp"
#include "shapesphere/taylor.hpp"
#include "shapesphere/vec.hpp"

namespace shapesphere::collision {

// Equal masses, zero energy, collision chart (theta = 0 at the Euler point e3,
// binary collision points at -pi/3, pi/3, pi). All curves live on the unit
// sphere with the colatitude phi as independent variable after the series
// handoff.

struct LeadingExponents {
    double a0_lagrange = 0.0; // (sqrt(13) - 1) / 8
    double b0_euler = 0.0;    // (sqrt(1185)/5 - 1) / 8
    double a0_escape = 0.0;   // -(sqrt(13) + 1) / 8
    double b0_escape = 0.0;
};
LeadingExponents leading_exponents();

struct CollisionCurveState {
    double phi = 0.0;
    double theta = 0.0;
    double dtheta_dphi = 0.0;
    double alpha = 0.0;
};

// Power-series data at the pole. f, g are the phi-parametrized coefficients
// (theta = theta0 + sum f_k phi^{k+1}, alpha = sum g_k phi^{k+1}); a, c, d the
// arc-length-parametrized ones (phi = sum c_k s^{k+1}, theta - theta0 =
// sum d_k s^{k+1}, alpha = a_0 s (1 + a_1 s + ...)).
struct SeriesCoefficients {
    double theta0 = 0.0;
    int order = 0;
    std::vector<double> f, g;
    std::vector<double> a, c, d;

    CollisionCurveState eval(double phi) const;
};

struct SeriesOptions {
    double residual_tol = 1e-8; // ODE residual bound at the handoff radius
};

// Method of undetermined coefficients for the singular IVP at the pole.
SeriesCoefficients series_init(double theta0, int order, double phi0 = 0.05,
                               const SeriesOptions& opt = {});

// Right-hand side of the explicit phi-parametrized system:
// state (theta, theta', alpha) -> (theta', theta'', alpha').
std::array<double, 3> collision_ode_rhs(double phi, double theta, double theta_p, double alpha);

struct CurveSample {
    double phi = 0.0;
    double theta = 0.0;
    double theta_p = 0.0;
    double alpha = 0.0;
};

struct ContinuationOptions {
    AdaptiveOptions ode{};
    double cusp_sin_alpha = 1e-6;
    double cusp_grad_floor = 1e-6;   // |grad U*| above this at a halting point => cusp
    double binary_guard = 1e-6;      // chordal distance to a collision point
    std::vector<double> output_phi;  // dense-output stations (sorted ascending)
    double record_stride = 0.0;      // 0: record every accepted step
};

struct CurveResult {
    std::vector<CurveSample> samples;          // every accepted step (or stride)
    std::vector<CurveSample> at_output;        // values at the requested stations
    StopReason reason = StopReason::Completed;
    double phi_final = 0.0;
};

CurveResult continue_curve(const CollisionCurveState& init, double phi_end,
                           const ContinuationOptions& opt = {});

// Convenience: series handoff at phi0 followed by continuation.
CurveResult trace_curve(double theta0, double phi_end, double phi0 = 0.05, int order = 9,
                        const ContinuationOptions& opt = {});

// --- Meridian / equator (isosceles and collinear) solutions -----------------

// d alpha / ds = -1/4 + (1/2) cot(alpha) D(s) with D the tangential log-derivative
// of U* along the wall; case 1: meridian theta = 0 (s = phi), case 2: equator
// (s = theta from e3), case 3: meridian theta = pi/3.
enum class WallCase { MeridianTheta0 = 1, Equator = 2, MeridianTheta60 = 3 };

// Taylor expansion of D_i at s = 0 (for tests and the series handoff).
Taylor wall_log_derivative_series(WallCase c, int order);

// Series coefficients of alpha(s) = a0 s (1 + a1 s + ...) for the wall case.
std::vector<double> wall_alpha_series(WallCase c, int order);

struct WallSolution {
    std::vector<double> s;          // phi (cases 1/3) or theta (case 2)
    std::vector<double> alpha;
    std::vector<double> alpha_prime; // ODE right-hand side at the samples
    double first_cusp = 0.0;   // parameter of the first cusp past the start (0 if none found)
    bool cusp_found = false;

    double alpha_at(double sq) const; // cubic Hermite interpolation
};

// Integrates the wall equation from the series handoff out to s_max, detecting
// the first cusp (alpha -> 0 with D != 0).
WallSolution solve_wall(WallCase c, double s_max, double s0 = 0.01, int order = 12,
                        const AdaptiveOptions& ode = {});

// --- Symmetry operations ----------------------------------------------------

struct SymmetryOp {
    int rotation = 0;      // theta -> theta + rotation * 2 pi / 3
    bool reflect = false;  // theta -> -theta
    bool mirror = false;   // phi -> pi - phi (orientation reversal)
    bool reverse = false;  // (s, alpha) -> (-s, pi - alpha)
};

CurveSample apply_symmetry(const CurveSample& s, const SymmetryOp& op);
std::vector<CurveSample> apply_symmetry(const std::vector<CurveSample>& curve,
                                        const SymmetryOp& op);

// --- Gradient-flow curvature (equal masses) ---------------------------------

// Geodesic curvature of the gradient line of U* through a non-critical point
// of the unit sphere, via the triple-product formula.
double gradient_flow_curvature(const Vec3& p, double critical_tol = 1e-10);

// The alternating-polynomial route (sign-structured product form); equals the
// triple-product value.
double gradient_flow_curvature_product_form(const Vec3& p, double critical_tol = 1e-10);

// --- Size recovery and asymptotics ------------------------------------------

// rho(s) = rho_ref * exp(1/2 int cot(alpha) ds) along a sampled curve; alpha
// given as a function of the curve parameter s (arc length on the unit sphere
// corresponds to ds here when the curve is a meridian).
double rho_from_alpha(const std::function<double(double)>& alpha_of_s, double s_ref,
                      double rho_ref, double s_target, double cot_guard = 1e-12);

struct AsymptoticsFit {
    double t0 = 0.0;              // estimated collision time
    double rho_exponent = 0.0;    // expect 2/3
    double kappa = 0.0;           // expect (9 mu / 2)^{1/3}
    double s_exponent = 0.0;      // expect 4 a0 / 3 or 4 b0 / 3
    double tsigma_exponent = 0.0; // expect 4/3 + 2 (e - 1)
    int decades = 0;              // decades of rho covered by the fit window
};

struct AsymptoticsSeries {
    std::vector<double> t;       // times (collision approached as t -> t0)
    std::vector<double> rho;
    std::vector<double> s;       // shape arc length from the limit shape
    std::vector<double> tsigma;  // shape kinetic energy
};

// Log-log regression of the tabulated approach; throws InsufficientApproach
// when fewer than `min_decades` decades of rho are available.
AsymptoticsFit asymptotics_check(const AsymptoticsSeries& data, double min_decades = 3.0);

// --- Table sweep --------------------------------------------------------------

// The six colatitude stations used by the reference tables.
std::vector<double> table_columns();

struct TableSweep {
    std::vector<double> theta0;                    // initial directions
    std::vector<double> columns;                   // phi stations
    std::vector<std::vector<double>> alpha;        // [row][column]
    std::vector<std::vector<double>> theta;
    std::vector<std::vector<double>> theta_p;
};

// Traces one collision curve per theta0 (in parallel) and samples the three
// tabulated quantities at the requested stations.
TableSweep sweep_tables(const std::vector<double>& theta0, const std::vector<double>& columns,
                        int threads = 0, double phi0 = 0.05, int order = 9);

} // namespace shapesphere::collision
