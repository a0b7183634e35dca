#pragma once

#include <string>
#include <vector>

#include "dgimex/config.hpp"
#include "dgimex/diagnostics.hpp"
#include "dgimex/solvers.hpp"

namespace dgimex {

struct SolverDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunResult {
    double t_final = 0.0;
    long steps = 0;
    double mass0 = 0.0, energy0 = 0.0;
    double dm = 0.0, de = 0.0;            // relative |change|
    double min_theta_p = 0.0, max_theta_p = 0.0; // final state
    double wall_seconds = 0.0;
    long total_iterations = 0;
    int total_solves = 0;
    double mean_iterations_per_step = 0.0;
    bool solver_converged = true;
    State final_state;
};

/// Run one experiment; writes diagnostics.csv, snapshots, and summary.json
/// into the output directory (unless out_dir is empty).
RunResult run_simulation(const RunConfig& cfg, const std::string& out_dir_override = "",
                         bool write_outputs = true);

/// Temporal-order study: MAE of the thermodynamic variable against a cached
/// small-step explicit reference, least-squares slope over the dt ladder.
struct ConvergePoint {
    double dt = 0.0;
    double cn = 0.0;
    std::array<double, 4> mae{};
};
struct ConvergeResult {
    std::vector<ConvergePoint> points;
    double slope = 0.0;
    std::string reference_path;
};
ConvergeResult converge_dt(const RunConfig& base, const std::vector<double>& dts,
                           double ref_cn, const std::string& out_dir);
/// Column variant driven by vertical resolution; each point gets its own
/// reference at the same resolution.
ConvergeResult converge_resolution(const RunConfig& base, const std::vector<int>& nezs,
                                   double ref_cn, const std::string& out_dir);

struct SweepRow {
    double cn = 0.0;
    double dt = 0.0;
    long steps = 0;
    double wall_seconds = 0.0;
    double mean_iterations_per_step = 0.0;
};
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& cns,
                            const std::string& out_dir);

struct SpectrumResult {
    int n = 0;
    std::string kind;
    std::string matrix_path;
    double kappa = 0.0;
    SpdReport spd;
};
SpectrumResult spectrum(const RunConfig& cfg, const std::string& out_dir, unsigned seed);

/// Binary state snapshot io (reference caching).
void save_state(const std::string& path, const State& q);
State load_state(const std::string& path);

/// Nodal CSV / legacy VTK snapshot writers.
void write_snapshot_csv(const std::string& path, const Mesh& mesh, const ReferenceState& ref,
                        const State& q);
void write_snapshot_vtk(const std::string& path, const Mesh& mesh, const ReferenceState& ref,
                        const State& q);

} // namespace dgimex
