#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"

namespace dgimex {

/// Paired explicit/implicit Butcher tableaux with shared weights b (the
/// conservation condition). Explicit part strictly lower triangular, implicit
/// part lower triangular with a zero first diagonal entry.
struct ImexTableaux {
    std::string name;
    int stages = 0;
    int order = 0;
    std::vector<double> a_ex;  // stages x stages, row-major
    std::vector<double> a_im;
    std::vector<double> b;
    std::vector<double> c;

    double aex(int i, int j) const { return a_ex[i * stages + j]; }
    double aim(int i, int j) const { return a_im[i * stages + j]; }
};

/// Registry of the shipped schemes: "ark2", "ark3", "ark4".
const ImexTableaux& imex_tableaux(const std::string& name);
std::vector<std::string> imex_tableaux_names();

/// Solver callback for the stage systems q_tt - alpha L(q_tt) = qhat.
/// `stage` is the 1-based stage index (for warm starting / stats).
struct StageSolveStats {
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};
using RhsFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;
using StageSolver = std::function<StageSolveStats(double alpha, const std::vector<double>& qhat,
                                                  std::vector<double>& q_tt, int stage)>;

/// One additive Runge-Kutta step. S is the full spatial tendency, L the linear
/// operator (same object the implicit solver inverts against). Stages with a
/// zero implicit diagonal coefficient are purely explicit.
struct ArkWork {
    std::vector<std::vector<double>> stage_q, stage_s, stage_l;
    std::vector<double> qhat, wsum, qtt;
};
struct ArkStepStats {
    int solves = 0;
    long iterations = 0;
    double max_residual = 0.0;
    bool converged = true;
};
ArkStepStats ark_step(std::vector<double>& q, double dt, const ImexTableaux& tab,
                      const RhsFn& S, const RhsFn& L, const StageSolver& solve, ArkWork& work);

/// Five-stage third-order strong-stability-preserving explicit step (reference
/// integrator for convergence studies).
struct Rk35Work {
    std::vector<std::vector<double>> u;
};
void rk35_step(std::vector<double>& q, double dt, const RhsFn& rhs, Rk35Work& work);

enum class CourantMode { total, acoustic, advective, vertical_acoustic };
CourantMode courant_mode_from_name(const std::string& name);
std::string courant_mode_name(CourantMode mode);

/// CN = max over nodes of c dt / ds with the mode's wave speed and length.
double courant_number(const Mesh& mesh, const ReferenceState& ref, const State& q, double dt,
                      CourantMode mode);

} // namespace dgimex
