#pragma once

#include <array>
#include <string>
#include <vector>

#include "dgimex/field.hpp"
#include "dgimex/implicit.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"

namespace dgimex {

struct MassEnergy {
    double mass = 0.0;
    double energy = 0.0;
};

/// Quadrature integrals of total density and total energy (compensated
/// summation in a fixed order). For Set2C the energy is diagnosed from the
/// equation of state and reported only.
MassEnergy mass_energy(const Mesh& mesh, const ReferenceState& ref, const State& q);

/// Per-variable mean absolute error between two states of identical shape.
std::array<double, 4> mae(const State& q, const State& q_ref);

/// Densify an operator by probing with unit vectors (row-major n x n).
/// Guarded against absurd sizes.
std::vector<double> densify(const OperatorHandle& op, int max_n = 20000);

void write_matrix_market(const std::string& path, int n, const std::vector<double>& dense);

struct ConditionReport {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    double kappa = 0.0;
    int iterations_max = 0;
    int iterations_min = 0;
};
/// kappa = sigma_max/sigma_min via power iteration on B^T B and inverse power
/// iteration through an LU factorization, each converged to rel_tol.
ConditionReport condition_number(const std::vector<double>& dense, int n,
                                 double rel_tol = 1e-6, unsigned seed = 1234);

struct SpdReport {
    double rel_asymmetry = 0.0; // ||B - B^T||_F / ||B||_F
    bool spd = false;           // Cholesky of (B+B^T)/2 succeeded
};
SpdReport spd_check(const std::vector<double>& dense, int n);

/// Real-spectrum measure: max |Im(lambda)| / spectral radius (dense solve).
double max_relative_imag_eigenvalue(const std::vector<double>& dense, int n);

/// Diagnostics time-series writer (fixed header, deterministic formatting).
class DiagnosticsCsv {
  public:
    explicit DiagnosticsCsv(const std::string& path);
    ~DiagnosticsCsv();
    void write_row(double t, double dt, double cn_total, double cn_acoustic,
                   double cn_advective, double dm, double de, double min_thermo,
                   double max_thermo, long iters, double resid, double wall_s);

  private:
    struct Impl;
    Impl* impl_;
};

} // namespace dgimex
