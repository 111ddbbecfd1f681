// Command-line front end: simulation and reduction runners, shape-sphere
// mapping, phase integrals, potential tabulation, collision curves and table
// sweeps, and the acceptance-suite driver.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shapesphere/batch.hpp"
#include "shapesphere/collision.hpp"
#include "shapesphere/config.hpp"
#include "shapesphere/dynamics.hpp"
#include "shapesphere/frame.hpp"
#include "shapesphere/kinematics.hpp"
#include "shapesphere/potential.hpp"
#include "shapesphere/presets.hpp"
#include "shapesphere/shape.hpp"
#include "shapesphere/schemas.hpp"
#include "shapesphere/verify.hpp"

using namespace shapesphere;
using json = nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;

    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : out(path, std::ios::binary) {
        if (!out) throw ConfigError("cannot open output file " + path);
        for (size_t i = 0; i < header.size(); ++i)
            out << header[i] << (i + 1 < header.size() ? "," : "\n");
    }
    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i)
            out << fmt(values[i]) << (i + 1 < values.size() ? "," : "\n");
    }
};

std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) { // header
            first = false;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const MassDistribution& m) {
    CsvWriter csv(path, schemas::trajectory());
    for (const auto& s : traj.samples) {
        const ITriple I = moments(s.state.triangle(m));
        const double rho = std::sqrt(I.total());
        ShapePoint p;
        if (I.total() > 0) {
            int orient = +1;
            const MTriangle tri = s.state.triangle(m);
            if (tri.is_planar(1e-9)) orient = tri.signed_area() >= 0 ? +1 : -1;
            p = itriple_to_shape(I, orient, m);
        }
        std::vector<double> row{s.t};
        for (int i = 0; i < 3; ++i) {
            row.push_back(s.state.pos[i].x);
            row.push_back(s.state.pos[i].y);
            row.push_back(s.state.pos[i].z);
        }
        for (int i = 0; i < 3; ++i) {
            row.push_back(s.state.vel[i].x);
            row.push_back(s.state.vel[i].y);
            row.push_back(s.state.vel[i].z);
        }
        row.insert(row.end(), {I.I1, I.I2, I.I3, rho, p.phi, p.theta,
                               total_energy(s.state, m), angular_momentum(s.state, m).z});
        csv.row(row);
    }
}

int cmd_simulate(const RunConfig& cfg, const std::string& preset_name, double t_end,
                 const std::string& out_prefix) {
    const MassDistribution m =
        (preset_name == "isosceles-beta0" || preset_name == "collinear-explosion")
            ? MassDistribution::equal()
            : cfg.masses();
    const Preset ps = preset_by_name(preset_name, m);
    NewtonOptions opt;
    opt.ode.abs_tol = cfg.get_double("integrator.abs_tol", 1e-12);
    opt.ode.rel_tol = cfg.get_double("integrator.rel_tol", 1e-12);
    opt.ode.h_max = cfg.get_double("integrator.h_max", 1e-2);
    opt.collision_factor = cfg.get_double("integrator.collision_factor", 1e-6);
    if (t_end == 0.0) t_end = (ps.t_collision < 0) ? -1.05 : ps.t_char;
    const Trajectory traj = integrate_newton(ps.state, ps.masses, 0.0, t_end, opt);
    write_trajectory_csv(out_prefix + ".csv", traj, ps.masses);

    json summary;
    summary["command"] = "simulate";
    summary["preset"] = preset_name;
    summary["t_end_requested"] = t_end;
    summary["t_final"] = traj.t_final;
    summary["stop_reason"] = to_string(traj.reason);
    summary["steps"] = traj.steps;
    summary["energy_drift"] = traj.energy_drift;
    summary["angular_momentum_drift"] = traj.angmom_drift;
    summary["h"] = ps.h;
    summary["omega"] = ps.omega;
    if (traj.reason == StopReason::CollisionDetected) {
        collision::AsymptoticsSeries series;
        const double dir = (t_end < 0) ? -1.0 : 1.0;
        for (const auto& s : traj.samples) {
            const double rho = std::sqrt(s.state.triangle(ps.masses).I());
            if (rho > 1e-2) continue;
            series.t.push_back(dir * s.t);
            series.rho.push_back(rho);
        }
        try {
            const auto fit = collision::asymptotics_check(series, 1.5);
            summary["t_collision"] = dir * fit.t0;
            summary["rho_exponent"] = fit.rho_exponent;
        } catch (const NumericalError&) {
        }
    }
    write_json(out_prefix + ".json", summary);
    std::printf("simulate: %s -> %s.csv (%zu samples, %s)\n", preset_name.c_str(),
                out_prefix.c_str(), traj.samples.size(), to_string(traj.reason));
    return 0;
}

int cmd_reduce(const RunConfig& cfg, const std::string& preset_name, double t_end,
               const std::string& out_prefix) {
    const MassDistribution m = cfg.masses();
    const Preset ps = preset_by_name(preset_name, m);
    ReducedPlanarState rs;
    rs.I = moments(ps.state.triangle(ps.masses));
    for (int i = 0; i < 3; ++i)
        rs.Idot[i] = 2.0 * ps.masses[i] * ps.state.pos[i].dot(ps.state.vel[i]);
    NewtonOptions opt;
    opt.ode.abs_tol = cfg.get_double("integrator.abs_tol", 1e-12);
    opt.ode.rel_tol = cfg.get_double("integrator.rel_tol", 1e-12);
    if (t_end == 0.0) t_end = ps.t_char;
    const ReducedTrajectory red =
        integrate_reduced_planar(rs, ps.omega, +1, ps.masses, 0.0, t_end, opt);
    CsvWriter csv(out_prefix + ".csv", schemas::reduced());
    for (const auto& s : red.samples) {
        const ShapePoint p = itriple_to_shape(s.state.I, +1, ps.masses);
        csv.row({s.t, s.state.I.I1, s.state.I.I2, s.state.I.I3, s.state.Idot[0],
                 s.state.Idot[1], s.state.Idot[2], std::sqrt(s.state.I.total()), p.phi,
                 p.theta});
    }
    json summary;
    summary["command"] = "reduce";
    summary["preset"] = preset_name;
    summary["stop_reason"] = to_string(red.reason);
    summary["samples"] = red.samples.size();
    summary["omega"] = ps.omega;
    write_json(out_prefix + ".json", summary);
    std::printf("reduce: %s -> %s.csv (%zu samples)\n", preset_name.c_str(),
                out_prefix.c_str(), red.samples.size());
    return 0;
}

int cmd_lift(const RunConfig& cfg, const std::string& input, double omega,
             const std::string& out_prefix) {
    const MassDistribution m = cfg.masses();
    const auto rows = read_csv(input);
    if (rows.size() < 2) throw ConfigError("lift: need at least two input rows");
    std::vector<double> ts;
    std::vector<ITriple> Is, Ids;
    for (const auto& r : rows) {
        if (r.size() < 7) throw ConfigError("lift: rows must be t,I1,I2,I3,I1dot,I2dot,I3dot");
        ts.push_back(r[0]);
        Is.push_back({r[1], r[2], r[3]});
        Ids.push_back({r[4], r[5], r[6]});
    }
    const auto curve = hermite_moduli_curve(ts, Is, Ids);
    const MTriangle init = triangle_from_itriple(Is.front(), m, +1);
    const auto lifted = lift_planar(curve, omega, init, ts.front(), ts.back());
    CsvWriter csv(out_prefix + ".csv", {"t", "x1", "y1", "x2", "y2", "x3", "y3"});
    for (const auto& s : lifted)
        csv.row({s.t, s.positions[0].x, s.positions[0].y, s.positions[1].x, s.positions[1].y,
                 s.positions[2].x, s.positions[2].y});
    std::printf("lift: %s -> %s.csv (%zu samples)\n", input.c_str(), out_prefix.c_str(),
                lifted.size());
    return 0;
}

int cmd_phase(const RunConfig& cfg, const std::string& input, double omega,
              const std::string& out_prefix) {
    const MassDistribution m = cfg.masses();
    const auto rows = read_csv(input); // t, phi, theta [, I]
    if (rows.size() < 2) throw ConfigError("phase: need at least two input rows");
    std::vector<Vec3> pts;
    std::vector<double> ts, Is;
    for (const auto& r : rows) {
        if (r.size() < 3) throw ConfigError("phase: rows must be t,phi,theta[,I]");
        ts.push_back(r[0]);
        pts.push_back(ShapePoint{r[1], r[2], false}.unit());
        Is.push_back(r.size() > 3 ? r[3] : 1.0);
    }
    std::array<double, 3> vals{};
    if ((pts.front() - pts.back()).norm() > 1e-15 || pts.size() > 2 ||
        (pts.size() == 2 && (pts[0] - pts[1]).norm() > 1e-15)) {
        vals = one_form_integrals_polyline(pts, m, PathIntegralOptions{64, 1e-12});
    }
    double dyn = 0.0;
    for (size_t k = 0; k + 1 < ts.size(); ++k)
        dyn += 0.5 * (omega / Is[k] + omega / Is[k + 1]) * (ts[k + 1] - ts[k]);
    json out;
    out["command"] = "phase";
    out["geometric_phase_1"] = vals[0];
    out["geometric_phase_2"] = vals[1];
    out["geometric_phase_3"] = vals[2];
    out["dynamical_phase"] = dyn;
    out["delta_phi_1"] = vals[0] + dyn;
    out["delta_phi_2"] = vals[1] + dyn;
    out["delta_phi_3"] = vals[2] + dyn;
    write_json(out_prefix + ".json", out);
    std::printf("phase: delta_phi = (%s, %s, %s)\n", fmt(vals[0] + dyn).c_str(),
                fmt(vals[1] + dyn).c_str(), fmt(vals[2] + dyn).c_str());
    return 0;
}

int cmd_shape_map(const RunConfig& cfg, const std::string& input,
                  const std::string& out_prefix) {
    const MassDistribution m = cfg.masses();
    const auto rows = read_csv(input); // x1,y1,x2,y2,x3,y3
    CsvWriter csv(out_prefix + ".csv", schemas::shape_map());
    for (const auto& r : rows) {
        if (r.size() < 6) throw ConfigError("shape-map: rows must be x1,y1,x2,y2,x3,y3");
        const MTriangle tri = MTriangle::planar(r[0], r[1], r[2], r[3], r[4], r[5], m);
        const ITriple I = moments(tri);
        const ModuliPoint mp = triangle_to_shape(tri);
        csv.row({I.I1, I.I2, I.I3, mp.rho, mp.shape.phi, mp.shape.theta});
    }
    std::printf("shape-map: %s -> %s.csv\n", input.c_str(), out_prefix.c_str());
    return 0;
}

int cmd_potential(const RunConfig& cfg, int grid, const std::string& out_prefix) {
    const MassDistribution m = cfg.masses();
    std::vector<double> px, py, pz, phis, thetas;
    for (int i = 1; i < grid; ++i) {
        const double phi = i * M_PI / grid;
        for (int j = 0; j < grid; ++j) {
            const double th = j * 2.0 * M_PI / grid;
            phis.push_back(phi);
            thetas.push_back(th);
            px.push_back(std::sin(phi) * std::cos(th));
            py.push_back(std::sin(phi) * std::sin(th));
            pz.push_back(std::cos(phi));
        }
    }
    const size_t n = px.size();
    std::vector<double> val(n), gx(n), gy(n), gz(n);
    const auto coeff = batch::PotentialCoefficients::from_masses(m);
    batch::u_star_batch()(coeff, px.data(), py.data(), pz.data(), n, val.data(), gx.data(),
                          gy.data(), gz.data());
    CsvWriter csv(out_prefix + ".csv", schemas::potential_grid());
    for (size_t q = 0; q < n; ++q) {
        const double phi = phis[q], th = thetas[q];
        const Vec3 tphi{std::cos(phi) * std::cos(th), std::cos(phi) * std::sin(th),
                        -std::sin(phi)};
        const Vec3 tth{-std::sin(th), std::cos(th), 0.0};
        const Vec3 grad{gx[q], gy[q], gz[q]};
        csv.row({phi, th, val[q], grad.dot(tphi), grad.dot(tth) * std::sin(phi)});
    }
    const SpecialPoints sp = special_points(m);
    {
        CsvWriter crit(out_prefix + "_critical.csv", {"kind", "phi", "theta", "U"});
        const auto emit = [&](double kind, const Vec3& pt) {
            const ShapePoint q = ShapePoint::from_unit(pt);
            crit.row({kind, q.phi, q.theta, u_star_vector(pt, m)});
        };
        emit(0, sp.lagrange_north);   // kind 0: minimum (north)
        emit(1, sp.lagrange_south);   // kind 1: minimum (south)
        for (int i = 0; i < 3; ++i) emit(2 + i, sp.euler_unit[i]); // 2..4: saddles
    }
    json summary;
    summary["command"] = "potential";
    summary["backend"] = batch::active_backend();
    summary["grid"] = grid;
    summary["lagrange_point"] = {sp.lagrange_north.x, sp.lagrange_north.y,
                                 sp.lagrange_north.z};
    summary["euler_longitudes"] = {sp.euler_theta[0], sp.euler_theta[1], sp.euler_theta[2]};
    summary["minimum_value"] = std::pow(m.mhat(), 1.5);
    write_json(out_prefix + ".json", summary);
    std::printf("potential: %zu grid points -> %s.csv (%s backend)\n", n, out_prefix.c_str(),
                batch::active_backend().c_str());
    return 0;
}

int emit_tables(const collision::TableSweep& sweep, const std::string& out_prefix,
                int which_table) {
    const char* names[3] = {"alpha", "theta", "dtheta_dphi"};
    for (int t = 0; t < 3; ++t) {
        if (which_table != 0 && which_table != t + 1) continue;
        std::vector<std::string> header{"k", "theta0"};
        for (double c : sweep.columns) header.push_back("phi_" + fmt(c));
        CsvWriter csv(out_prefix + "_table" + std::to_string(t + 1) + "_" + names[t] + ".csv",
                      header);
        for (size_t row = 0; row < sweep.theta0.size(); ++row) {
            std::vector<double> r{static_cast<double>(row), sweep.theta0[row]};
            const auto& src =
                (t == 0) ? sweep.alpha : (t == 1) ? sweep.theta : sweep.theta_p;
            for (double v : src[row]) r.push_back(v);
            csv.row(r);
        }
    }
    return 0;
}

int cmd_tables(const RunConfig& cfg, const std::string& grid, bool check, int which_table,
               const std::string& out_prefix) {
    std::vector<double> theta0;
    const int kmax = (grid == "fine") ? 100 : 10;
    const double step = (grid == "fine") ? M_PI / 300.0 : M_PI / 30.0;
    for (int k = 0; k <= kmax; ++k) theta0.push_back(k * step);
    const int threads = static_cast<int>(cfg.get_int("run.threads", env_thread_count()));
    const auto sweep = collision::sweep_tables(theta0, collision::table_columns(), threads);
    emit_tables(sweep, out_prefix, which_table);
    if (!check) {
        std::printf("tables: %d rows x %zu columns -> %s_table*.csv\n", kmax + 1,
                    sweep.columns.size(), out_prefix.c_str());
        return 0;
    }
    if (grid == "fine") {
        std::printf("tables: --check requires the coarse grid\n");
        return 2;
    }
    const TableGolden& golden = golden_tables();
    int mismatches = 0;
    const auto check_cell = [&](const char* tab, size_t r, size_t c, double got,
                                double want) {
        if (want == TableGolden::illegible) return;
        if (std::abs(got - want) > 5e-4) {
            ++mismatches;
            std::printf("MISMATCH %s k=%zu col=%zu: got %s want %s\n", tab, r, c,
                        fmt(got).c_str(), fmt(want).c_str());
        }
    };
    for (size_t r = 0; r < theta0.size(); ++r)
        for (size_t c = 0; c < sweep.columns.size(); ++c) {
            check_cell("table1", r, c, sweep.alpha[r][c], golden.alpha[r][c]);
            check_cell("table2", r, c, sweep.theta[r][c], golden.theta[r][c]);
            check_cell("table3", r, c, sweep.theta_p[r][c], golden.theta_p[r][c]);
        }
    if (mismatches == 0)
        std::printf("tables --check: PASS\n");
    else
        std::printf("tables --check: %d mismatches\n", mismatches);
    return mismatches == 0 ? 0 : 1;
}

int cmd_collision_curve(double theta0, double phi0, int order, double tol,
                        const std::string& out_prefix) {
    collision::ContinuationOptions opt;
    opt.ode.abs_tol = opt.ode.rel_tol = tol;
    const auto res = collision::trace_curve(theta0, M_PI / 2.0 - 1e-4, phi0, order, opt);
    CsvWriter csv(out_prefix + ".csv", schemas::collision_curve());
    for (const auto& s : res.samples) csv.row({s.phi, s.theta, s.theta_p, s.alpha});
    json summary;
    summary["command"] = "collision";
    summary["theta0"] = theta0;
    summary["phi0"] = phi0;
    summary["order"] = order;
    summary["stop_reason"] = to_string(res.reason);
    summary["phi_final"] = res.phi_final;
    write_json(out_prefix + ".json", summary);
    std::printf("collision: theta0=%s -> %s.csv (%zu samples, %s)\n", fmt(theta0).c_str(),
                out_prefix.c_str(), res.samples.size(), to_string(res.reason));
    return 0;
}

int cmd_verify(const VerifyOptions& vopt, const std::string& out_prefix) {
    const auto results = run_acceptance(vopt);
    bool all = true;
    json report;
    report["command"] = "verify";
    report["seed"] = vopt.seed;
    json items = json::array();
    for (const auto& r : results) {
        std::printf("[%s] %-22s worst %.3e (tol %.0e, %.1f s) %s\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tolerance,
                    r.seconds, r.detail.c_str());
        all = all && r.pass;
        json item;
        item["criterion"] = r.name;
        item["pass"] = r.pass;
        item["worst"] = r.worst;
        item["tolerance"] = r.tolerance;
        item["seconds"] = r.seconds;
        item["detail"] = r.detail;
        items.push_back(item);
    }
    report["results"] = items;
    report["all_pass"] = all;
    if (!out_prefix.empty()) write_json(out_prefix + ".json", report);
    std::printf("%s\n", all ? "verify: ALL PASS" : "verify: FAILURES");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-sphere three-body toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory");

    auto* sim = app.add_subcommand("simulate", "direct Newtonian integration");
    std::string sim_preset = "lagrange-circular";
    double sim_tend = 0.0;
    sim->add_option("--preset", sim_preset, "initial condition preset");
    sim->add_option("--t-end", sim_tend, "integration end time (preset default if 0)");

    auto* red = app.add_subcommand("reduce", "Omega-reduced planar integration");
    std::string red_preset = "perturbed-lagrange";
    double red_tend = 0.0;
    red->add_option("--preset", red_preset, "initial condition preset");
    red->add_option("--t-end", red_tend, "integration end time");

    auto* lift = app.add_subcommand("lift", "reconstruct a planar motion from a moduli CSV");
    std::string lift_input;
    double lift_omega = 0.0;
    lift->add_option("--input", lift_input, "CSV: t,I1,I2,I3,I1dot,I2dot,I3dot")->required();
    lift->add_option("--omega", lift_omega, "angular momentum");

    auto* phase = app.add_subcommand("phase", "kinematic phase of a shape path");
    std::string phase_input;
    double phase_omega = 0.0;
    phase->add_option("--input", phase_input, "CSV: t,phi,theta[,I]")->required();
    phase->add_option("--omega", phase_omega, "angular momentum");

    auto* smap = app.add_subcommand("shape-map", "map planar triangles to the shape sphere");
    std::string smap_input;
    smap->add_option("--input", smap_input, "CSV: x1,y1,x2,y2,x3,y3")->required();

    auto* pot = app.add_subcommand("potential", "tabulate U* and its gradient");
    int pot_grid = 64;
    pot->add_option("--grid", pot_grid, "grid resolution per axis");

    auto* coll = app.add_subcommand("collision", "trace one triple-collision shape curve");
    double coll_theta0 = M_PI / 30.0, coll_phi0 = 0.05, coll_tol = 1e-12;
    int coll_order = 9;
    coll->add_option("--theta0", coll_theta0, "initial longitude direction (radians)");
    coll->add_option("--phi0", coll_phi0, "series handoff radius");
    coll->add_option("--order", coll_order, "series order");
    coll->add_option("--tol", coll_tol, "continuation tolerance");

    auto* tab = app.add_subcommand("tables", "sweep the collision-curve tables");
    std::string tab_grid = "coarse";
    bool tab_check = false;
    int tab_which = 0;
    tab->add_option("--grid", tab_grid, "coarse (k pi/30) or fine (k pi/300)");
    tab->add_flag("--check", tab_check, "diff against the embedded reference values");
    tab->add_option("--table", tab_which, "emit a single table (1, 2 or 3)");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    std::vector<std::string> ver_only;
    bool ver_fault = false;
    std::uint64_t ver_seed = 42;
    ver->add_option("--only", ver_only, "run only matching criteria");
    ver->add_flag("--inject-fault", ver_fault, "negative control: perturb one golden value");
    ver->add_option("--seed", ver_seed, "seed for the randomized suites");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = RunConfig::load(config_path);
        const auto out = [&](const std::string& stem) { return out_dir + "/" + stem; };
        if (*sim) return cmd_simulate(cfg, sim_preset, sim_tend, out("simulate"));
        if (*red) return cmd_reduce(cfg, red_preset, red_tend, out("reduce"));
        if (*lift) return cmd_lift(cfg, lift_input, lift_omega, out("lift"));
        if (*phase) return cmd_phase(cfg, phase_input, phase_omega, out("phase"));
        if (*smap) return cmd_shape_map(cfg, smap_input, out("shape_map"));
        if (*pot) return cmd_potential(cfg, pot_grid, out("potential"));
        if (*coll)
            return cmd_collision_curve(coll_theta0, coll_phi0, coll_order, coll_tol,
                                       out("collision"));
        if (*tab) return cmd_tables(cfg, tab_grid, tab_check, tab_which, out("tables"));
        if (*ver) {
            VerifyOptions vopt;
            vopt.seed = ver_seed;
            vopt.only = ver_only;
            vopt.inject_fault = ver_fault;
            return cmd_verify(vopt, out("verify"));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
