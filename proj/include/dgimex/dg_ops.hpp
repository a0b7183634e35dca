#pragma once

#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"

namespace dgimex {

enum class DgForm { weak, strong };

/// Which directions the operator differentiates (vertical-only for the
/// column-implicit forms).
enum class Dir { all, vertical };

/// Face-trace rule for the numerical flux.
///  centered  : average of the two traces
///  take_down : one-sided, value from the lower-coordinate side (LDG pass 1)
///  take_up   : one-sided, value from the higher-coordinate side (LDG pass 2)
enum class FaceFlux { centered, take_down, take_up };

/// Ghost-state rule at no-flux walls for the quantity being fluxed.
///  copy   : ghost = interior trace (zero jump; scalars, pressure)
///  mirror : ghost normal component negated (momentum-like; flux vanishes)
///  zero   : flux forced to zero (LDG diffusive flux at walls)
enum class WallRule { copy, mirror, zero };

/// Divergence of the nodal vector field (fx,fz): returns the nodal integrals
/// of the chosen variational form (no mass inversion applied).
void div_integral(const Mesh& mesh, const double* fx, const double* fz, DgForm form,
                  Dir dir, FaceFlux flux, WallRule wall, double* out);

/// Gradient of the nodal scalar p, nodal integrals per component.
void grad_integral(const Mesh& mesh, const double* p, DgForm form, Dir dir,
                   FaceFlux flux, WallRule wall, double* outx, double* outz);

inline void apply_mass_inverse(const Mesh& mesh, double* v) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)mesh.num_nodes; ++i)
        v[i] /= mesh.mass[i];
}

/// Two-pass LDG Laplacian integrals of div(nu grad q). The auxiliary gradient
/// takes the down trace, the divergence the up trace; the diffusive flux is
/// zero at no-flux walls. nu is nodal and must be non-negative.
struct LdgWork {
    Field gx, gz;
    void resize(int n) {
        gx.assign(n, 0.0);
        gz.assign(n, 0.0);
    }
};
void ldg_laplacian_integral(const Mesh& mesh, const double* q, const double* nu,
                            LdgWork& work, double* out);

/// Mass-inverted convenience wrappers used by the implicit operators.
void div_h(const Mesh& mesh, const double* fx, const double* fz, DgForm form, Dir dir,
           WallRule wall, double* out);
void grad_h(const Mesh& mesh, const double* p, DgForm form, Dir dir, double* outx,
            double* outz);

} // namespace dgimex
