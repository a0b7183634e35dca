#pragma once

#include <array>
#include <string>

#include "dgimex/dg_ops.hpp"
#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"

namespace dgimex {

/// Rusanov wave-speed pairings for the implicit (L) and explicit (NL) parts.
enum class FluxConfig { AT, AL, CT, CL, CA };
enum class FluxPart { linear, nonlinear, total };

FluxConfig flux_config_from_name(const std::string& name);
std::string flux_config_name(FluxConfig cfg);
/// True when the implicit part carries no jump term (lambda_L = 0).
bool is_centered_implicit(FluxConfig cfg);

/// Trace data entering the Table-1 wave-speed rules. Starred quantities take
/// the max of the two sides; a0 is single valued (continuous reference).
struct FaceTraces {
    double un_left, un_right; // normal velocity u.n per side
    double a_left, a_right;   // total sound speed per side
    double a0;                // reference sound speed at the face
};
double wave_speed(FluxConfig cfg, FluxPart part, const FaceTraces& traces);

// ---------------------------------------------------------------------------
// Equations of state
// ---------------------------------------------------------------------------

/// P = P_A (R Theta / P_A)^gamma; Theta is the total potential-temperature
/// density. Throws for non-positive Theta.
double pressure_set2c(double theta_total, const PhysConstants& c);
double pressure_set2c_inverse(double p, const PhysConstants& c);

/// P = (gamma-1)(E - |U|^2/(2 rho) - rho phi). Throws for non-positive rho.
double pressure_set3c(double rho, double ux, double uz, double e_total, double phi,
                      const PhysConstants& c);

// ---------------------------------------------------------------------------
// Nodal flux evaluations (2D tensors, rows: mass, x-mom, z-mom, thermo)
// ---------------------------------------------------------------------------

struct FluxRows {
    std::array<double, 4> fx, fz;
};

/// Total perturbation-form flux at one node of the nodal state
/// (rho', Ux, Uz, thermo').
FluxRows total_flux_at(const ReferenceState& ref, int i, double rho_p, double ux, double uz,
                       double th_p);
/// Linear flux at one node (linearized pressure, reference enthalpy transport).
FluxRows linear_flux_at(const ReferenceState& ref, int i, double rho_p, double ux, double uz,
                        double th_p);
FluxRows total_flux(const State& q, const ReferenceState& ref, int i);
FluxRows linear_flux(const State& q, const ReferenceState& ref, int i);
/// F_NL = F_T - F_L, formed as the exact difference.
FluxRows nonlinear_flux(const State& q, const ReferenceState& ref, int i);

// ---------------------------------------------------------------------------
// Tendency kernels
// ---------------------------------------------------------------------------

struct TendencyWork {
    Field fx[4], fz[4];
    Field rho_tot, pprime, asnd;
    void resize(int n) {
        for (int v = 0; v < 4; ++v) {
            fx[v].assign(n, 0.0);
            fz[v].assign(n, 0.0);
        }
        rho_tot.assign(n, 0.0);
        pprime.assign(n, 0.0);
        asnd.assign(n, 0.0);
    }
};

/// Full spatial tendency S(q): Rusanov-fluxed divergence of the total flux
/// (wave speed lambda_T of the flux configuration) plus the buoyancy source.
/// Output is mass-inverted. Throws if the total density is non-positive.
/// q/out are flat 4n vectors [rho|ux|uz|thermo].
void spatial_tendency(const Mesh& mesh, const ReferenceState& ref, const double* q,
                      FluxConfig cfg, DgForm form, TendencyWork& work, double* out);
void spatial_tendency(const Mesh& mesh, const ReferenceState& ref, const State& q,
                      FluxConfig cfg, DgForm form, TendencyWork& work, State& out);

/// Linear operator L(q): divergence of the linear flux with the implicit-part
/// wave speed lambda_L, plus buoyancy. dir = vertical gives the column form.
void linear_tendency(const Mesh& mesh, const ReferenceState& ref, const double* q,
                     FluxConfig cfg, DgForm form, Dir dir, TendencyWork& work, double* out);
void linear_tendency(const Mesh& mesh, const ReferenceState& ref, const State& q,
                     FluxConfig cfg, DgForm form, Dir dir, TendencyWork& work, State& out);

// ---------------------------------------------------------------------------
// 1D flux Jacobians (verification surface)
// ---------------------------------------------------------------------------

/// Analytic Jacobian of the 1D linear flux (U, P_L, h0 U) wrt (rho,U,thermo).
std::array<double, 9> linear_flux_jacobian_1d(const ReferenceState& ref, int node);

/// Finite-difference eigenvalues of the 1D nonlinear flux Jacobian at a
/// Set3C state, sorted ascending; analytically {0, (3-gamma)u, gamma u} sorted.
std::array<double, 3> nonlinear_wavespeeds_1d(double rho, double u_mom, double e_total,
                                              double phi, double h0,
                                              const PhysConstants& c);

/// Rusanov face flux for one variable: avg(F)·n - (lambda/2) (q_out - q_in).
inline double rusanov_face(double fn_in, double fn_out, double q_in, double q_out,
                           double lambda) {
    return 0.5 * (fn_in + fn_out) - 0.5 * lambda * (q_out - q_in);
}

} // namespace dgimex
