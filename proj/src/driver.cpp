#include "dgimex/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>

#include "dgimex/cases.hpp"
#include "dgimex/imex.hpp"

namespace dgimex {

namespace {

double now_seconds() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

struct Problem {
    RunConfig cfg;
    CaseSpec spec;
    Mesh mesh;
    ReferenceState ref;
    State q0;
    StabConfig stab;
    double t_end = 0.0;
};

Problem setup_problem(const RunConfig& cfg) {
    Problem p;
    p.cfg = cfg;
    p.spec = case_spec(cfg.case_name);
    double lx = cfg.lx > 0.0 ? cfg.lx : p.spec.lx;
    const double lz = cfg.lz > 0.0 ? cfg.lz : p.spec.lz;
    if (lx <= 0.0) {
        // aspect-derived channel width: dx_node/dz_node = aspect
        lx = cfg.aspect * lz * cfg.nex / cfg.nez;
    }
    p.mesh = build_box_mesh(cfg.nex, cfg.nez, lx, lz, cfg.order, p.spec.bc);
    PhysConstants consts;
    initialize_case(p.spec, p.mesh, consts, cfg.set, cfg.mean_flow, p.ref, p.q0);
    p.stab = cfg.stab.value_or(p.spec.stab);
    p.t_end = cfg.t_end >= 0.0 ? cfg.t_end : p.spec.t_end;
    return p;
}

State make_state_view(const Problem& p, const std::vector<double>& data) {
    State s(p.ref.set, p.mesh.num_nodes);
    s.data = data;
    return s;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

/// Everything needed to advance one configured experiment in time.
struct Stepper {
    Problem* p = nullptr;
    ImplicitContext ctx;
    TendencyWork s_work, l_work;
    StabWork stab_work;
    ImplicitWork imp_work;
    ArkWork ark_work;
    Rk35Work rk_work;
    const ImexTableaux* tab = nullptr;
    std::vector<double> prev_solution;
    bool have_prev = false;
    // cached column factorizations for the current alpha
    double col_alpha = -1.0;
    std::unique_ptr<ColumnSystems> cols;
    std::vector<double> schur_r, schur_p;

    RhsFn make_S() {
        return [this](const std::vector<double>& x, std::vector<double>& y) {
            y.resize(x.size());
            spatial_tendency(p->mesh, p->ref, x.data(), p->cfg.flux, p->cfg.variational,
                             s_work, y.data());
            if (p->stab.mode != StabMode::none)
                apply_stabilization(p->mesh, p->ref, x.data(), p->stab, stab_work, y.data());
        };
    }

    RhsFn make_L() {
        const Dir dir = ctx.dir;
        return [this, dir](const std::vector<double>& x, std::vector<double>& y) {
            y.resize(x.size());
            linear_tendency(p->mesh, p->ref, x.data(), p->cfg.flux, p->cfg.variational, dir,
                            l_work, y.data());
        };
    }

    void ensure_columns(double alpha) {
        if (!cols || col_alpha != alpha) {
            cols = std::make_unique<ColumnSystems>(
                build_column_systems(ctx, alpha, p->cfg.form));
            col_alpha = alpha;
        }
    }

    StageSolver make_solver() {
        return [this](double alpha, const std::vector<double>& qhat,
                      std::vector<double>& qtt, int stage) -> StageSolveStats {
            const RunConfig& cfg = p->cfg;
            const bool column = cfg.formulation == Formulation::column;
            StageSolveStats st;
            if (cfg.form == ImexForm::no_schur) {
                if (column) {
                    ensure_columns(alpha);
                    cols->solve_no_schur(qhat, qtt);
                    st.iterations = 0;
                    st.converged = true;
                } else {
                    qtt = (cfg.warm_start && have_prev) ? prev_solution : qhat;
                    auto op = [this, alpha](const std::vector<double>& x,
                                            std::vector<double>& y) {
                        no_schur_apply(ctx, alpha, x, y, imp_work);
                    };
                    const SolveReport rep =
                        gmres(op, qhat, qtt, cfg.tol, cfg.restart, cfg.max_iter);
                    st.iterations = rep.iterations;
                    st.residual = rep.rel_residual;
                    st.converged = rep.converged;
                    prev_solution = qtt;
                    have_prev = true;
                }
            } else {
                schur_rhs(ctx, alpha, qhat, schur_r, imp_work);
                if (column) {
                    ensure_columns(alpha);
                    cols->solve_schur(schur_r, schur_p);
                    st.converged = true;
                } else {
                    if (cfg.warm_start && have_prev)
                        schur_p = prev_solution;
                    else
                        schur_p.assign(schur_r.size(), 0.0);
                    SolveReport rep;
                    if (cfg.krylov == "cg") {
                        OperatorHandle symop = make_schur_handle(ctx, alpha, true);
                        // solve the similarity-transformed SPD system
                        Field lam;
                        schur_sym_weight(ctx, lam);
                        std::vector<double> rs(schur_r.size()), xs(schur_r.size());
                        for (size_t i = 0; i < rs.size(); ++i) {
                            const double lh = std::sqrt(lam[i]);
                            rs[i] = schur_r[i] * lh;
                            xs[i] = schur_p[i] * lh;
                        }
                        rep = conjugate_gradient(symop.apply, rs, xs, cfg.tol, cfg.max_iter);
                        for (size_t i = 0; i < rs.size(); ++i)
                            schur_p[i] = xs[i] / std::sqrt(lam[i]);
                    } else {
                        auto op = [this, alpha](const std::vector<double>& x,
                                                std::vector<double>& y) {
                            schur_apply(ctx, alpha, x, y, imp_work);
                        };
                        rep = gmres(op, schur_r, schur_p, cfg.tol, cfg.restart, cfg.max_iter);
                    }
                    st.iterations = rep.iterations;
                    st.residual = rep.rel_residual;
                    st.converged = rep.converged;
                    prev_solution = schur_p;
                    have_prev = true;
                }
                back_substitute(ctx, alpha, schur_p, qhat, qtt, imp_work);
            }
            (void)stage;
            return st;
        };
    }
};

} // namespace

void save_state(const std::string& path, const State& q) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    const char magic[9] = "DGXSTATE";
    out.write(magic, 8);
    const int set = (q.set == EquationSet::set2c) ? 2 : 3;
    out.write(reinterpret_cast<const char*>(&set), sizeof(int));
    out.write(reinterpret_cast<const char*>(&q.n), sizeof(int));
    out.write(reinterpret_cast<const char*>(q.data.data()),
              (std::streamsize)(q.data.size() * sizeof(double)));
}

State load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::string(magic, 8) != "DGXSTATE")
        throw std::runtime_error("bad state file: " + path);
    int set = 0, n = 0;
    in.read(reinterpret_cast<char*>(&set), sizeof(int));
    in.read(reinterpret_cast<char*>(&n), sizeof(int));
    State q(set == 2 ? EquationSet::set2c : EquationSet::set3c, n);
    in.read(reinterpret_cast<char*>(q.data.data()),
            (std::streamsize)(q.data.size() * sizeof(double)));
    if (!in)
        throw std::runtime_error("truncated state file: " + path);
    return q;
}

void write_snapshot_csv(const std::string& path, const Mesh& mesh, const ReferenceState& ref,
                        const State& q) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "x,z,rho_p,Ux,Uz,thermo_p,P_p\n");
    for (int i = 0; i < mesh.num_nodes; ++i) {
        double pp;
        if (ref.set == EquationSet::set2c)
            pp = pressure_set2c(ref.thermo0[i] + q.thermo()[i], ref.consts) - ref.p0[i];
        else
            pp = pressure_set3c(ref.rho0[i] + q.rho()[i], q.ux()[i], q.uz()[i],
                                ref.thermo0[i] + q.thermo()[i], ref.phi[i], ref.consts) -
                 ref.p0[i];
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", mesh.x[i], mesh.z[i],
                     q.rho()[i], q.ux()[i], q.uz()[i], q.thermo()[i], pp);
    }
    std::fclose(f);
}

void write_snapshot_vtk(const std::string& path, const Mesh& mesh, const ReferenceState& ref,
                        const State& q) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw std::runtime_error("cannot open " + path);
    const int n1 = mesh.n1();
    const int cells_per_elem = mesh.basis.order * mesh.basis.order;
    std::fprintf(f, "# vtk DataFile Version 3.0\nfields\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    std::fprintf(f, "POINTS %d double\n", mesh.num_nodes);
    for (int i = 0; i < mesh.num_nodes; ++i)
        std::fprintf(f, "%.17g %.17g 0\n", mesh.x[i], mesh.z[i]);
    const int ncells = mesh.num_elements * cells_per_elem;
    std::fprintf(f, "CELLS %d %d\n", ncells, 5 * ncells);
    for (int e = 0; e < mesh.num_elements; ++e)
        for (int j = 0; j < mesh.basis.order; ++j)
            for (int i = 0; i < mesh.basis.order; ++i)
                std::fprintf(f, "4 %d %d %d %d\n", mesh.node(e, i, j), mesh.node(e, i + 1, j),
                             mesh.node(e, i + 1, j + 1), mesh.node(e, i, j + 1));
    std::fprintf(f, "CELL_TYPES %d\n", ncells);
    for (int i = 0; i < ncells; ++i)
        std::fprintf(f, "9\n");
    std::fprintf(f, "POINT_DATA %d\n", mesh.num_nodes);
    const char* names[4] = {"rho_p", "Ux", "Uz", "thermo_p"};
    for (int v = 0; v < 4; ++v) {
        std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", names[v]);
        for (int i = 0; i < mesh.num_nodes; ++i)
            std::fprintf(f, "%.17g\n", q.data[(size_t)v * mesh.num_nodes + i]);
    }
    (void)n1;
    (void)ref;
    std::fclose(f);
}

RunResult run_simulation(const RunConfig& cfg, const std::string& out_dir_override,
                         bool write_outputs) {
    const double wall0 = now_seconds();
    Problem p = setup_problem(cfg);
    const std::string out_dir = out_dir_override.empty() ? cfg.out_dir : out_dir_override;
    std::unique_ptr<DiagnosticsCsv> csv;
    if (write_outputs) {
        std::filesystem::create_directories(out_dir);
        csv = std::make_unique<DiagnosticsCsv>(out_dir + "/diagnostics.csv");
        std::ofstream canon(out_dir + "/config_canonical.ini");
        canon << serialize_config(cfg);
    }

    Stepper st;
    st.p = &p;
    st.ctx = ImplicitContext{&p.mesh, &p.ref, cfg.flux, cfg.variational,
                             cfg.formulation == Formulation::column ? Dir::vertical
                                                                    : Dir::all};
    if (cfg.integrator == Integrator::imex)
        st.tab = &imex_tableaux(cfg.tableaux);

    RhsFn S = st.make_S();
    RhsFn L = st.make_L();
    StageSolver solver = st.make_solver();

    std::vector<double> q = p.q0.data;
    const MassEnergy me0 = mass_energy(p.mesh, p.ref, p.q0);

    RunResult res;
    res.mass0 = me0.mass;
    res.energy0 = me0.energy;

    double t = 0.0;
    long step = 0;
    long iters_this_row = 0;
    double resid_this_row = 0.0;
    Field theta_p;
    std::vector<char> snapshot_done(cfg.snapshot_times.size(), 0);

    auto diag_row = [&](double dt_used) {
        const State qs = make_state_view(p, q);
        const MassEnergy me = mass_energy(p.mesh, p.ref, qs);
        diagnose_theta_perturbation(p.mesh, p.ref, qs, theta_p);
        double mn = theta_p[0], mx = theta_p[0];
        for (double v : theta_p) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        if (csv) {
            const double dm = std::abs((me.mass - me0.mass) / me0.mass);
            const double de = std::abs((me.energy - me0.energy) / me0.energy);
            csv->write_row(t, dt_used, courant_number(p.mesh, p.ref, qs, dt_used,
                                                      CourantMode::total),
                           courant_number(p.mesh, p.ref, qs, dt_used, CourantMode::acoustic),
                           courant_number(p.mesh, p.ref, qs, dt_used, CourantMode::advective),
                           dm, de, mn, mx, iters_this_row, resid_this_row,
                           now_seconds() - wall0);
        }
        iters_this_row = 0;
        resid_this_row = 0.0;
    };

    auto take_snapshots = [&](bool final) {
        if (!write_outputs)
            return;
        auto emit = [&](const std::string& tag) {
            const State qs = make_state_view(p, q);
            const std::string base = out_dir + "/snapshot_" + tag;
            if (cfg.snapshot_format == "vtk")
                write_snapshot_vtk(base + ".vtk", p.mesh, p.ref, qs);
            else
                write_snapshot_csv(base + ".csv", p.mesh, p.ref, qs);
        };
        for (size_t k = 0; k < cfg.snapshot_times.size(); ++k)
            if (!snapshot_done[k] && t >= cfg.snapshot_times[k] - 1e-9) {
                snapshot_done[k] = 1;
                char buf[32];
                std::snprintf(buf, sizeof buf, "t%g", cfg.snapshot_times[k]);
                emit(buf);
            }
        if (final)
            emit("final");
    };

    double dt_fixed = cfg.dt;
    diag_row(dt_fixed > 0 ? dt_fixed : 0.0);

    while (t < p.t_end - 1e-12 * std::max(1.0, p.t_end)) {
        double dt = dt_fixed;
        if (cfg.cn > 0.0) {
            const State qs = make_state_view(p, q);
            const double cn1 = courant_number(p.mesh, p.ref, qs, 1.0, cfg.cn_mode);
            dt = cfg.cn / cn1;
        }
        if (t + dt > p.t_end)
            dt = p.t_end - t;

        if (cfg.integrator == Integrator::rk35) {
            rk35_step(q, dt, S, st.rk_work);
        } else {
            const ArkStepStats stats = ark_step(q, dt, *st.tab, S, L, solver, st.ark_work);
            iters_this_row += stats.iterations;
            resid_this_row = std::max(resid_this_row, stats.max_residual);
            res.total_iterations += stats.iterations;
            res.total_solves += stats.solves;
            if (!stats.converged)
                res.solver_converged = false;
        }
        t += dt;
        ++step;
        if (!all_finite(q))
            throw SolverDivergence("non-finite state at step " + std::to_string(step) +
                                   " (t = " + std::to_string(t) + ")");
        if (step % cfg.every == 0 || t >= p.t_end - 1e-12)
            diag_row(dt);
        take_snapshots(false);
    }
    take_snapshots(true);

    res.t_final = t;
    res.steps = step;
    res.final_state = make_state_view(p, q);
    const MassEnergy me1 = mass_energy(p.mesh, p.ref, res.final_state);
    res.dm = std::abs((me1.mass - me0.mass) / me0.mass);
    res.de = std::abs((me1.energy - me0.energy) / me0.energy);
    diagnose_theta_perturbation(p.mesh, p.ref, res.final_state, theta_p);
    res.min_theta_p = *std::min_element(theta_p.begin(), theta_p.end());
    res.max_theta_p = *std::max_element(theta_p.begin(), theta_p.end());
    res.wall_seconds = now_seconds() - wall0;
    res.mean_iterations_per_step = step ? (double)res.total_iterations / step : 0.0;

    if (write_outputs) {
        nlohmann::json j;
        j["t_final"] = res.t_final;
        j["steps"] = res.steps;
        j["mass0"] = res.mass0;
        j["energy0"] = res.energy0;
        j["dM"] = res.dm;
        j["dE"] = res.de;
        j["min_theta_p"] = res.min_theta_p;
        j["max_theta_p"] = res.max_theta_p;
        j["wall_seconds"] = res.wall_seconds;
        j["mean_iterations_per_step"] = res.mean_iterations_per_step;
        j["solver_converged"] = res.solver_converged;
        std::ofstream js(out_dir + "/summary.json");
        js << j.dump(2) << "\n";
    }
    return res;
}

namespace {

std::string reference_key(const RunConfig& base, double ref_cn) {
    RunConfig r = base;
    r.integrator = Integrator::rk35;
    r.dt = 0.0;
    r.cn = ref_cn;
    r.cn_mode = CourantMode::total;
    const std::string s = serialize_config(r);
    return std::to_string(std::hash<std::string>{}(s));
}

State get_reference(const RunConfig& base, double ref_cn, const std::string& out_dir,
                    std::string& path_out) {
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/ref_" + base.case_name + "_" +
                             reference_key(base, ref_cn) + ".bin";
    path_out = path;
    if (std::filesystem::exists(path))
        return load_state(path);
    RunConfig r = base;
    r.integrator = Integrator::rk35;
    r.dt = 0.0;
    r.cn = ref_cn;
    r.cn_mode = CourantMode::total;
    const RunResult rr = run_simulation(r, "", false);
    save_state(path, rr.final_state);
    return rr.final_state;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

ConvergeResult converge_dt(const RunConfig& base, const std::vector<double>& dts,
                           double ref_cn, const std::string& out_dir) {
    if (dts.size() < 3)
        throw ConfigError("converge: ladder needs at least 3 points");
    for (size_t i = 1; i < dts.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (dts[i] == dts[j])
                throw ConfigError("converge: degenerate ladder (repeated dt)");

    ConvergeResult out;
    const State ref_state = get_reference(base, ref_cn, out_dir, out.reference_path);

    std::vector<double> logdt, logmae;
    for (double dt : dts) {
        RunConfig r = base;
        r.integrator = Integrator::imex;
        r.dt = dt;
        r.cn = 0.0;
        const RunResult rr = run_simulation(r, "", false);
        ConvergePoint pt;
        pt.dt = dt;
        pt.mae = mae(rr.final_state, ref_state);
        {
            Problem p = setup_problem(r);
            pt.cn = courant_number(p.mesh, p.ref, p.q0, dt, CourantMode::total);
        }
        out.points.push_back(pt);
        logdt.push_back(std::log(dt));
        logmae.push_back(std::log(pt.mae[3])); // thermodynamic variable
    }
    out.slope = ls_slope(logdt, logmae);
    return out;
}

ConvergeResult converge_resolution(const RunConfig& base, const std::vector<int>& nezs,
                                   double ref_cn, const std::string& out_dir) {
    if (nezs.size() < 3)
        throw ConfigError("converge: ladder needs at least 3 points");
    ConvergeResult out;
    std::vector<double> logcn, logmae;
    for (int nez : nezs) {
        RunConfig r = base;
        r.nez = nez;
        std::string rp;
        const State ref_state = get_reference(r, ref_cn, out_dir, rp);
        out.reference_path = rp;
        const RunResult rr = run_simulation(r, "", false);
        ConvergePoint pt;
        pt.dt = r.dt;
        pt.mae = mae(rr.final_state, ref_state);
        {
            Problem p = setup_problem(r);
            pt.cn = courant_number(p.mesh, p.ref, p.q0, r.dt, CourantMode::vertical_acoustic);
        }
        out.points.push_back(pt);
        logcn.push_back(std::log(pt.cn));
        logmae.push_back(std::log(pt.mae[3]));
    }
    out.slope = ls_slope(logcn, logmae);
    return out;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& cns,
                            const std::string& out_dir) {
    (void)out_dir;
    std::vector<SweepRow> rows;
    for (double cn : cns) {
        RunConfig r = base;
        r.dt = 0.0;
        r.cn = cn;
        const RunResult rr = run_simulation(r, "", false);
        SweepRow row;
        row.cn = cn;
        row.steps = rr.steps;
        row.dt = rr.steps ? rr.t_final / rr.steps : 0.0;
        row.wall_seconds = rr.wall_seconds;
        row.mean_iterations_per_step = rr.mean_iterations_per_step;
        rows.push_back(row);
    }
    return rows;
}

SpectrumResult spectrum(const RunConfig& cfg, const std::string& out_dir, unsigned seed) {
    Problem p = setup_problem(cfg);
    const ImplicitContext ctx{&p.mesh, &p.ref, cfg.flux, cfg.variational,
                              cfg.formulation == Formulation::column ? Dir::vertical
                                                                     : Dir::all};
    const ImexTableaux& tab = imex_tableaux(cfg.tableaux);
    double dt = cfg.dt;
    if (dt <= 0.0) {
        const double cn1 = courant_number(p.mesh, p.ref, p.q0, 1.0, cfg.cn_mode);
        dt = (cfg.cn > 0.0 ? cfg.cn : 1.0) / cn1;
    }
    double aii = 0.0;
    for (int i = 0; i < tab.stages; ++i)
        aii = std::max(aii, tab.a_im[i * tab.stages + i]);
    const double alpha = dt * aii;

    const OperatorHandle op = (cfg.form == ImexForm::schur)
                                  ? make_schur_handle(ctx, alpha, true)
                                  : make_no_schur_handle(ctx, alpha);
    SpectrumResult out;
    out.n = op.n;
    out.kind = op.kind;
    const std::vector<double> dense = densify(op);
    std::filesystem::create_directories(out_dir);
    out.matrix_path = out_dir + "/operator_" + op.kind + ".mtx";
    write_matrix_market(out.matrix_path, op.n, dense);
    out.kappa = condition_number(dense, op.n, 1e-6, seed).kappa;
    out.spd = spd_check(dense, op.n);
    return out;
}

} // namespace dgimex
