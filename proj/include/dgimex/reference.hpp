#pragma once

#include "dgimex/constants.hpp"
#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"

namespace dgimex {

enum class Profile { constant_theta, isothermal };

/// Hydrostatic background state and the derived coefficient fields used by the
/// linear operators and Schur complements. All profile-derived quantities
/// (h, dh/dz, G, F, symmetrizer weight) are evaluated analytically at nodes so
/// the rank-one inverse of A = I + alpha^2 G (grad h)^T is exact.
struct ReferenceState {
    EquationSet set = EquationSet::set3c;
    PhysConstants consts;
    Profile profile = Profile::constant_theta;
    double profile_temp = 300.0; // theta0 (constant-theta) or T0 (isothermal)

    Field rho0, p0, theta0, thermo0, phi; // thermo0 = Theta0 or E0 per set
    Field h, dhdz;                        // reference enthalpy-like field and d/dz
    Field bigF;                           // F = h - phi (Set3C), h for Set2C
    Field gvert;                          // G = g/h (2C), g/F (3C), vertical comp
    Field a0;                             // reference sound speed
    Field eos_t, eos_r;                   // P_L = eos_t*thermo' + eos_r*rho'
    Field w_sym;                          // Schur symmetrizer weight
    double hydro_residual = 0.0;          // max |dP0/dz + rho0 g| (discrete)

    /// Vertical entry of A = I + alpha^2 G (grad h)^T at node i.
    double ar(double alpha, int i) const { return 1.0 + alpha * alpha * gvert[i] * dhdz[i]; }
};

/// Build the reference for the given profile. Throws if the profile reaches
/// non-positive pressure inside the domain or A becomes near-singular.
ReferenceState hydrostatic_reference(Profile profile, double temp_param,
                                     const PhysConstants& consts, const Mesh& mesh,
                                     EquationSet set);

} // namespace dgimex
