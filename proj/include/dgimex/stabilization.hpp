#pragma once

#include "dgimex/dg_ops.hpp"
#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"

namespace dgimex {

enum class StabMode { none, constant_nu, vreman };

struct StabConfig {
    StabMode mode = StabMode::none;
    double nu = 0.0;   // constant viscosity [m^2/s]
    double cs = 0.21;  // Vreman constant
    bool on_momentum = true;
    bool on_thermo = true;
};

/// Algebraic Vreman eddy viscosity from the velocity-gradient tensor
/// grad[r][c] = du_c/dx_r with directions (x,z); dx2/dz2 are the squared
/// per-direction grid scales. Returns 0 for vanishing gradients and for pure
/// one-component shear; never negative.
double eddy_viscosity_vreman(const double grad[2][2], double cs, double dx2, double dz2);

struct StabWork {
    Field nu, lap;
    LdgWork ldg;
};

/// Add the LDG diffusion increment to the tendency for the configured targets
/// (momentum components and/or thermodynamic perturbation). Explicit-side
/// contribution; conservative by construction. q/tendency are flat 4n vectors.
void apply_stabilization(const Mesh& mesh, const ReferenceState& ref, const double* q,
                         const StabConfig& cfg, StabWork& work, double* tendency);
void apply_stabilization(const Mesh& mesh, const ReferenceState& ref, const State& q,
                         const StabConfig& cfg, StabWork& work, State& tendency);

/// Nodal viscosity field for the configuration (exposed for diagnostics).
void stabilization_viscosity(const Mesh& mesh, const ReferenceState& ref, const double* q,
                             const StabConfig& cfg, Field& nu);

} // namespace dgimex
