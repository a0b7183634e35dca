#include "dgimex/imex.hpp"

#include <cmath>
#include <stdexcept>

#include "dgimex/eqsets.hpp"

namespace dgimex {

namespace {

ImexTableaux make_ark2() {
    // three-stage, second-order additive scheme (Giraldo/Kelly/Constantinescu
    // family), stiffly accurate implicit part
    const double s2 = std::sqrt(2.0);
    const double gam = 1.0 - 1.0 / s2;
    const double a32 = (3.0 + 2.0 * s2) / 6.0;
    ImexTableaux t;
    t.name = "ark2";
    t.stages = 3;
    t.order = 2;
    t.a_ex = {0, 0, 0, //
              2 - s2, 0, 0, //
              1 - a32, a32, 0};
    t.a_im = {0, 0, 0, //
              gam, gam, 0, //
              1 / (2 * s2), 1 / (2 * s2), gam};
    t.b = {1 / (2 * s2), 1 / (2 * s2), gam};
    t.c = {0, 2 - s2, 1};
    return t;
}

ImexTableaux make_ark3() {
    // ARK3(2)4L[2]SA (Kennedy & Carpenter)
    const double g = 1767732205903.0 / 4055673282236.0;
    ImexTableaux t;
    t.name = "ark3";
    t.stages = 4;
    t.order = 3;
    t.a_ex = {0, 0, 0, 0, //
              2 * g, 0, 0, 0, //
              5535828885825.0 / 10492691773637.0, 788022342437.0 / 10882634858940.0, 0, 0, //
              6485989280629.0 / 16251701735622.0, -4246266847089.0 / 9704473918619.0,
              10755448449292.0 / 10357097424841.0, 0};
    t.a_im = {0, 0, 0, 0, //
              g, g, 0, 0, //
              2746238789719.0 / 10658868560708.0, -640167445237.0 / 6845629431997.0, g, 0, //
              1471266399579.0 / 7840856788654.0, -4482444167858.0 / 7529755066697.0,
              11266239266428.0 / 11593286722821.0, g};
    t.b = {1471266399579.0 / 7840856788654.0, -4482444167858.0 / 7529755066697.0,
           11266239266428.0 / 11593286722821.0, g};
    t.c = {0, 2 * g, 3.0 / 5.0, 1.0};
    return t;
}

ImexTableaux make_ark4() {
    // ARK4(3)6L[2]SA (Kennedy & Carpenter)
    ImexTableaux t;
    t.name = "ark4";
    t.stages = 6;
    t.order = 4;
    t.a_ex = {0, 0, 0, 0, 0, 0, //
              0.5, 0, 0, 0, 0, 0, //
              13861.0 / 62500.0, 6889.0 / 62500.0, 0, 0, 0, 0, //
              -116923316275.0 / 2393684061468.0, -2731218467317.0 / 15368042101831.0,
              9408046702089.0 / 11113171139209.0, 0, 0, 0, //
              -451086348788.0 / 2902428689909.0, -2682348792572.0 / 7519795681897.0,
              12662868775082.0 / 11960479115383.0, 3355817975965.0 / 11060851509271.0, 0, 0, //
              647845179188.0 / 3216320057751.0, 73281519250.0 / 8382639484533.0,
              552539513391.0 / 3454668386233.0, 3354512671639.0 / 8306763924573.0,
              4040.0 / 17871.0, 0};
    t.a_im = {0, 0, 0, 0, 0, 0, //
              0.25, 0.25, 0, 0, 0, 0, //
              8611.0 / 62500.0, -1743.0 / 31250.0, 0.25, 0, 0, 0, //
              5012029.0 / 34652500.0, -654441.0 / 2922500.0, 174375.0 / 388108.0, 0.25, 0, 0, //
              15267082809.0 / 155376265600.0, -71443401.0 / 120774400.0,
              730878875.0 / 902184768.0, 2285395.0 / 8070912.0, 0.25, 0, //
              82889.0 / 524892.0, 0, 15625.0 / 83664.0, 69875.0 / 102672.0, -2260.0 / 8211.0,
              0.25};
    t.b = {82889.0 / 524892.0, 0, 15625.0 / 83664.0, 69875.0 / 102672.0, -2260.0 / 8211.0,
           0.25};
    t.c = {0, 0.5, 83.0 / 250.0, 31.0 / 50.0, 17.0 / 20.0, 1.0};
    return t;
}

} // namespace

const ImexTableaux& imex_tableaux(const std::string& name) {
    static const ImexTableaux ark2 = make_ark2();
    static const ImexTableaux ark3 = make_ark3();
    static const ImexTableaux ark4 = make_ark4();
    if (name == "ark2") return ark2;
    if (name == "ark3") return ark3;
    if (name == "ark4") return ark4;
    throw std::invalid_argument("unknown tableaux: " + name);
}

std::vector<std::string> imex_tableaux_names() { return {"ark2", "ark3", "ark4"}; }

ArkStepStats ark_step(std::vector<double>& q, double dt, const ImexTableaux& tab,
                      const RhsFn& S, const RhsFn& L, const StageSolver& solve,
                      ArkWork& work) {
    const int s = tab.stages;
    const size_t n = q.size();
    work.stage_q.resize(s);
    work.stage_s.resize(s);
    work.stage_l.resize(s);
    for (int i = 0; i < s; ++i) {
        work.stage_q[i].resize(n);
        work.stage_s[i].resize(n);
        work.stage_l[i].resize(n);
    }
    work.qhat.resize(n);
    work.wsum.resize(n);
    work.qtt.resize(n);

    ArkStepStats stats;
    for (int i = 0; i < s; ++i) {
        const double aii = tab.aim(i, i);
        if (aii == 0.0) {
            // explicit stage
            work.stage_q[i] = q;
            for (int j = 0; j < i; ++j) {
                const double ae = tab.aex(i, j), ai = tab.aim(i, j);
                if (ae != 0.0) {
#pragma omp parallel for schedule(static)
                    for (long k = 0; k < (long)n; ++k)
                        work.stage_q[i][k] +=
                            dt * ae * (work.stage_s[j][k] - work.stage_l[j][k]);
                }
                if (ai != 0.0) {
#pragma omp parallel for schedule(static)
                    for (long k = 0; k < (long)n; ++k)
                        work.stage_q[i][k] += dt * ai * work.stage_l[j][k];
                }
            }
        } else {
            const double alpha = dt * aii;
            // wsum = sum_j (aim - aex)/aii * Q_j ; qhat = q + wsum + dt sum aex S_j
#pragma omp parallel for schedule(static)
            for (long k = 0; k < (long)n; ++k)
                work.wsum[k] = 0.0;
            for (int j = 0; j < i; ++j) {
                const double w = (tab.aim(i, j) - tab.aex(i, j)) / aii;
                if (w != 0.0) {
#pragma omp parallel for schedule(static)
                    for (long k = 0; k < (long)n; ++k)
                        work.wsum[k] += w * work.stage_q[j][k];
                }
            }
#pragma omp parallel for schedule(static)
            for (long k = 0; k < (long)n; ++k)
                work.qhat[k] = q[k] + work.wsum[k];
            for (int j = 0; j < i; ++j) {
                const double ae = tab.aex(i, j);
                if (ae != 0.0) {
#pragma omp parallel for schedule(static)
                    for (long k = 0; k < (long)n; ++k)
                        work.qhat[k] += dt * ae * work.stage_s[j][k];
                }
            }
            const StageSolveStats st = solve(alpha, work.qhat, work.qtt, i + 1);
            stats.solves += 1;
            stats.iterations += st.iterations;
            stats.max_residual = std::max(stats.max_residual, st.residual);
            stats.converged = stats.converged && st.converged;
#pragma omp parallel for schedule(static)
            for (long k = 0; k < (long)n; ++k)
                work.stage_q[i][k] = work.qtt[k] - work.wsum[k];
        }
        S(work.stage_q[i], work.stage_s[i]);
        L(work.stage_q[i], work.stage_l[i]);
    }
    for (int i = 0; i < s; ++i) {
        if (tab.b[i] == 0.0)
            continue;
#pragma omp parallel for schedule(static)
        for (long k = 0; k < (long)n; ++k)
            q[k] += dt * tab.b[i] * work.stage_s[i][k];
    }
    return stats;
}

void rk35_step(std::vector<double>& q, double dt, const RhsFn& rhs, Rk35Work& work) {
    // SSPRK(5,3), Shu-Osher form (Spiteri & Ruuth coefficients)
    const size_t n = q.size();
    work.u.resize(7);
    for (auto& u : work.u)
        u.resize(n);
    auto& u1 = work.u[0];
    auto& u2 = work.u[1];
    auto& u3 = work.u[2];
    auto& u4 = work.u[3];
    auto& f0 = work.u[4];
    auto& f1 = work.u[5];
    auto& f = work.u[6];

    rhs(q, f0);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < (long)n; ++k)
        u1[k] = q[k] + 0.37726891511710 * dt * f0[k];

    rhs(u1, f1);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < (long)n; ++k)
        u2[k] = u1[k] + 0.37726891511710 * dt * f1[k];

    rhs(u2, f);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < (long)n; ++k)
        u3[k] = 0.56656131914033 * q[k] + 0.43343868085967 * u2[k] +
                0.16352294089771 * dt * f[k];

    rhs(u3, f);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < (long)n; ++k)
        u4[k] = 0.09299483444413 * q[k] + 0.00002090369620 * u1[k] +
                0.90698426185967 * u3[k] + 0.00071997378654 * dt * f0[k] +
                0.34217696850008 * dt * f[k];

    rhs(u4, f);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < (long)n; ++k)
        q[k] = 0.00736132260920 * q[k] + 0.20127980325145 * u1[k] +
               0.00182955389682 * u2[k] + 0.78952932024253 * u4[k] +
               0.00277719819460 * dt * f0[k] + 0.00001567934613 * dt * f1[k] +
               0.29786487010104 * dt * f[k];
}

CourantMode courant_mode_from_name(const std::string& name) {
    if (name == "total") return CourantMode::total;
    if (name == "acoustic") return CourantMode::acoustic;
    if (name == "advective") return CourantMode::advective;
    if (name == "vertical-acoustic") return CourantMode::vertical_acoustic;
    throw std::invalid_argument("unknown courant mode: " + name);
}

std::string courant_mode_name(CourantMode mode) {
    switch (mode) {
    case CourantMode::total: return "total";
    case CourantMode::acoustic: return "acoustic";
    case CourantMode::advective: return "advective";
    default: return "vertical-acoustic";
    }
}

double courant_number(const Mesh& mesh, const ReferenceState& ref, const State& q, double dt,
                      CourantMode mode) {
    const double dxn = mesh.dx_node(), dzn = mesh.dz_node();
    const double ds = std::sqrt(dxn * dxn + dzn * dzn);
    double cn = 0.0;
#pragma omp parallel for schedule(static) reduction(max : cn)
    for (long i = 0; i < (long)mesh.num_nodes; ++i) {
        const double rho = ref.rho0[i] + q.rho()[i];
        const double speed = std::hypot(q.ux()[i], q.uz()[i]) / rho;
        double p;
        if (q.set == EquationSet::set2c)
            p = pressure_set2c(ref.thermo0[i] + q.thermo()[i], ref.consts);
        else
            p = pressure_set3c(rho, q.ux()[i], q.uz()[i], ref.thermo0[i] + q.thermo()[i],
                               ref.phi[i], ref.consts);
        const double a = std::sqrt(ref.consts.gamma() * p / rho);
        double c, len = ds;
        switch (mode) {
        case CourantMode::total: c = speed + a; break;
        case CourantMode::acoustic: c = a; break;
        case CourantMode::advective: c = speed; break;
        default:
            c = a;
            len = dzn;
            break;
        }
        cn = std::max(cn, c * dt / len);
    }
    return cn;
}

} // namespace dgimex
