#pragma once

#include <string>

#include "dgimex/field.hpp"
#include "dgimex/mesh.hpp"
#include "dgimex/reference.hpp"
#include "dgimex/stabilization.hpp"

namespace dgimex {

/// Benchmark-problem descriptor: default domain, boundaries, duration,
/// background profile, and stabilization.
struct CaseSpec {
    std::string name;
    double lx = 0.0, lz = 0.0; // lx <= 0 means derived from mesh aspect (channel)
    SideBcs bc;
    double t_end = 0.0;
    Profile profile = Profile::constant_theta;
    double profile_temp = 300.0;
    StabConfig stab;
    double mean_flow = 0.0; // igw
    double aspect = 0.0;    // acoustic channel: target dx_node/dz_node
};

const CaseSpec& case_spec(const std::string& name);
std::vector<std::string> case_names();

/// Convert a potential-temperature perturbation (at unperturbed pressure,
/// zero velocity) into prognostic perturbations over the given reference.
void theta_perturbation_to_state(const Mesh& mesh, const ReferenceState& ref,
                                 const Field& theta_p, State& q);

/// Recover the potential-temperature perturbation from a prognostic state.
void diagnose_theta_perturbation(const Mesh& mesh, const ReferenceState& ref, const State& q,
                                 Field& theta_p);

/// Case initializers. Each builds the hydrostatic reference for the requested
/// equation set and the initial perturbation state.
void init_rtb(const Mesh& mesh, const PhysConstants& c, EquationSet set, ReferenceState& ref,
              State& q);
void init_density_current(const Mesh& mesh, const PhysConstants& c, EquationSet set,
                          ReferenceState& ref, State& q);
void init_igw(const Mesh& mesh, const PhysConstants& c, EquationSet set, double mean_flow,
              ReferenceState& ref, State& q);
void init_acoustic_channel(const Mesh& mesh, const PhysConstants& c, EquationSet set,
                           ReferenceState& ref, State& q);

/// Dispatch by case name (mean_flow used by igw only).
void initialize_case(const CaseSpec& spec, const Mesh& mesh, const PhysConstants& c,
                     EquationSet set, double mean_flow, ReferenceState& ref, State& q);

} // namespace dgimex
