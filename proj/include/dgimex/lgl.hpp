#pragma once

#include <vector>

namespace dgimex {

/// 1D Legendre-Gauss-Lobatto collocation basis on [-1,1].
///
/// Quadrature at the interpolation points (inexact integration), diagonal
/// mass matrix, dense differentiation matrix D(i,j) = l_j'(xi_i).
struct LglBasis {
    int order = 0;                 // polynomial degree N
    std::vector<double> points;    // N+1 nodes, ascending
    std::vector<double> weights;   // N+1 quadrature weights
    std::vector<double> diff;      // (N+1)^2 row-major differentiation matrix

    int num_points() const { return order + 1; }
    double d(int i, int j) const { return diff[i * (order + 1) + j]; }
};

/// Build the LGL basis of the given polynomial degree. Throws for order < 1.
LglBasis lgl_basis(int order);

/// Legendre polynomial P_n and derivative P_n' at x (for tests and weights).
void legendre(int n, double x, double& p, double& dp);

} // namespace dgimex
