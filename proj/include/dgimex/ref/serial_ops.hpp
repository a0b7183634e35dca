#pragma once

#include "dgimex/dg_ops.hpp"

namespace dgimex::serial {

/// Plain single-threaded reference implementations of the DG operators,
/// written as straightforward per-element loops. Kept for validating the
/// OpenMP kernels and as the benchmark baseline.
void div_integral(const Mesh& mesh, const double* fx, const double* fz, DgForm form, Dir dir,
                  FaceFlux flux, WallRule wall, double* out);
void grad_integral(const Mesh& mesh, const double* p, DgForm form, Dir dir, FaceFlux flux,
                   WallRule wall, double* outx, double* outz);
void ldg_laplacian_integral(const Mesh& mesh, const double* q, const double* nu,
                            double* out);

} // namespace dgimex::serial
