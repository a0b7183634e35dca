#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace dgimex {

struct SolveReport {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
    double wall_seconds = 0.0;
};

using ApplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct SolverBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Restarted GMRES with modified Gram-Schmidt orthogonalization. x holds the
/// initial guess on entry (warm start) and the solution on exit. Convergence:
/// ||b - Ax|| <= tol_rel * ||b||. A non-converged solve still returns the best
/// iterate, flagged in the report.
SolveReport gmres(const ApplyFn& op, const std::vector<double>& rhs, std::vector<double>& x,
                  double tol_rel, int restart, int max_iter);

/// Conjugate gradient for SPD operators; throws SolverBreakdown on a
/// non-positive curvature direction.
SolveReport conjugate_gradient(const ApplyFn& op, const std::vector<double>& rhs,
                               std::vector<double>& x, double tol_rel, int max_iter);

/// General banded matrix with LU factorization (LAPACK dgbtrf/dgbtrs).
class BandedMatrix {
  public:
    BandedMatrix() = default;
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }
    bool factored() const { return factored_; }

    /// Entry access for assembly; (i,j) must lie within the band.
    double& at(int i, int j);
    double get(int i, int j) const;

    void factor(); // throws SolverBreakdown on singular pivot
    void solve(std::vector<double>& b) const;
    void solve(double* b) const;

  private:
    int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
    bool factored_ = false;
};

} // namespace dgimex
