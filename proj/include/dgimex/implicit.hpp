#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dgimex/dg_ops.hpp"
#include "dgimex/eqsets.hpp"
#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"
#include "dgimex/solvers.hpp"

namespace dgimex {

enum class ImexForm { no_schur, schur };

/// All the pieces the implicit-stage operators need.
struct ImplicitContext {
    const Mesh* mesh = nullptr;
    const ReferenceState* ref = nullptr;
    FluxConfig flux = FluxConfig::CA;
    DgForm form = DgForm::weak;
    Dir dir = Dir::all;
};

struct ImplicitWork {
    TendencyWork tw;
    Field gx, gz, yx, yz, d1, d2, rx, rz;
    void resize(int n) {
        gx.assign(n, 0.0);
        gz.assign(n, 0.0);
        yx.assign(n, 0.0);
        yz.assign(n, 0.0);
        d1.assign(n, 0.0);
        d2.assign(n, 0.0);
        rx.assign(n, 0.0);
        rz.assign(n, 0.0);
    }
};

/// y = x - alpha L(x) on the flat 4n state vector.
void no_schur_apply(const ImplicitContext& ctx, double alpha, const std::vector<double>& x,
                    std::vector<double>& y, ImplicitWork& work);

/// Pressure-space Schur operator (centered implicit fluxes required).
void schur_apply(const ImplicitContext& ctx, double alpha, const std::vector<double>& p,
                 std::vector<double>& out, ImplicitWork& work);

/// Schur right-hand side from the stage vector qhat (4n) into pressure space.
void schur_rhs(const ImplicitContext& ctx, double alpha, const std::vector<double>& qhat,
               std::vector<double>& rhs, ImplicitWork& work);

/// Recover the full stage state from the pressure solution.
void back_substitute(const ImplicitContext& ctx, double alpha, const std::vector<double>& p,
                     const std::vector<double>& qhat, std::vector<double>& q_tt,
                     ImplicitWork& work);

/// Diagonal congruence weight that renders the Schur operator symmetric in the
/// zero-buoyancy limit (and defines its natural inner product with gravity):
/// Lambda_i = mass_i * w_sym_i / eos_t_i.
void schur_sym_weight(const ImplicitContext& ctx, Field& lambda);

/// Abstract operator for solvers, dumps, and conditioning studies.
struct OperatorHandle {
    int n = 0;
    std::string kind;
    ApplyFn apply;
};
OperatorHandle make_no_schur_handle(const ImplicitContext& ctx, double alpha);
/// symmetrized=true wraps the apply as Lambda^{1/2} S Lambda^{-1/2}.
OperatorHandle make_schur_handle(const ImplicitContext& ctx, double alpha, bool symmetrized);

// ---------------------------------------------------------------------------
// Column (vertical-implicit) direct solves
// ---------------------------------------------------------------------------

/// Banded systems for the vertically-implicit forms; columns are independent
/// and the factorization is cached for the lifetime of the object.
class ColumnSystems {
  public:
    ImexForm form() const { return form_; }
    double alpha() const { return alpha_; }
    int bandwidth() const { return kl_; }

    /// No-Schur: solve (I - alpha L_col) q_tt = qhat for all columns (4n in/out).
    void solve_no_schur(const std::vector<double>& qhat, std::vector<double>& q_tt) const;
    /// Schur: solve the column pressure systems; rhs/P are nodal scalars.
    void solve_schur(const std::vector<double>& rhs, std::vector<double>& p) const;

    /// Assembled matrix of one column (for verification).
    const BandedMatrix& column_matrix(int c) const { return mats_[c]; }

    friend ColumnSystems build_column_systems(const ImplicitContext& ctx, double alpha,
                                              ImexForm form);

  private:
    const Mesh* mesh_ = nullptr;
    ImexForm form_ = ImexForm::no_schur;
    double alpha_ = 0.0;
    int ncol_ = 0, nfields_ = 0, kl_ = 0;
    std::vector<BandedMatrix> mats_;
    Field lam_half_; // packed Lambda^{1/2} per column node (schur symmetrization)
};

ColumnSystems build_column_systems(const ImplicitContext& ctx, double alpha, ImexForm form);

/// Matrix-free apply of the column-restricted operator on one packed column
/// (exposed so tests can probe it against the assembled matrices).
void column_apply(const ImplicitContext& ctx, double alpha, ImexForm form, int column,
                  const std::vector<double>& x, std::vector<double>& y);

} // namespace dgimex
