#include "dgimex/cases.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dgimex/eqsets.hpp"

namespace dgimex {

namespace {

std::map<std::string, CaseSpec> build_registry() {
    std::map<std::string, CaseSpec> reg;
    {
        CaseSpec s;
        s.name = "rtb";
        s.lx = 1000.0;
        s.lz = 1000.0;
        s.bc = SideBcs::all_no_flux();
        s.t_end = 650.0;
        s.profile = Profile::constant_theta;
        s.profile_temp = 300.0;
        s.stab.mode = StabMode::vreman;
        s.stab.cs = 0.21;
        reg[s.name] = s;
    }
    {
        CaseSpec s;
        s.name = "density-current";
        s.lx = 25600.0;
        s.lz = 6400.0;
        s.bc = SideBcs::all_no_flux();
        s.t_end = 900.0;
        s.profile = Profile::constant_theta;
        s.profile_temp = 300.0;
        s.stab.mode = StabMode::constant_nu;
        s.stab.nu = 75.0;
        reg[s.name] = s;
    }
    {
        CaseSpec s;
        s.name = "igw";
        s.lx = 300000.0;
        s.lz = 10000.0;
        s.bc = SideBcs::channel();
        s.t_end = 2500.0;
        s.profile = Profile::isothermal;
        s.profile_temp = 250.0;
        s.mean_flow = 20.0;
        s.stab.mode = StabMode::none;
        reg[s.name] = s;
    }
    {
        CaseSpec s;
        s.name = "acoustic-channel";
        s.lx = 0.0; // derived: lx = aspect * lz * nex / nez
        s.lz = 10000.0;
        s.bc = SideBcs::channel();
        s.t_end = 3600.0;
        s.profile = Profile::constant_theta;
        s.profile_temp = 300.0;
        s.aspect = 500.0;
        s.stab.mode = StabMode::none;
        reg[s.name] = s;
    }
    return reg;
}

const std::map<std::string, CaseSpec>& registry() {
    static const std::map<std::string, CaseSpec> reg = build_registry();
    return reg;
}

} // namespace

const CaseSpec& case_spec(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw std::invalid_argument("unknown case: " + name);
    return it->second;
}

std::vector<std::string> case_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry())
        out.push_back(k);
    return out;
}

void theta_perturbation_to_state(const Mesh& mesh, const ReferenceState& ref,
                                 const Field& theta_p, State& q) {
    const auto& c = ref.consts;
    const double R = c.gas_constant();
    q = State(ref.set, mesh.num_nodes);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double theta = ref.theta0[i] + theta_p[i];
        const double p = ref.p0[i]; // perturbation imposed at hydrostatic pressure
        const double temp = theta * std::pow(p / c.p_ref, R / c.cp);
        const double rho = p / (R * temp);
        q.rho()[i] = rho - ref.rho0[i];
        if (ref.set == EquationSet::set2c)
            q.thermo()[i] = rho * theta - ref.thermo0[i];
        else
            q.thermo()[i] = rho * c.cv * temp + rho * ref.phi[i] - ref.thermo0[i];
    }
}

void diagnose_theta_perturbation(const Mesh& mesh, const ReferenceState& ref, const State& q,
                                 Field& theta_p) {
    const auto& c = ref.consts;
    const double R = c.gas_constant();
    theta_p.resize(mesh.num_nodes);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double rho = ref.rho0[i] + q.rho()[i];
        double theta;
        if (ref.set == EquationSet::set2c) {
            theta = (ref.thermo0[i] + q.thermo()[i]) / rho;
        } else {
            const double e = ref.thermo0[i] + q.thermo()[i];
            const double p = pressure_set3c(rho, q.ux()[i], q.uz()[i], e, ref.phi[i], c);
            const double temp = p / (rho * R);
            theta = temp * std::pow(c.p_ref / p, R / c.cp);
        }
        theta_p[i] = theta - ref.theta0[i];
    }
}

void init_rtb(const Mesh& mesh, const PhysConstants& c, EquationSet set, ReferenceState& ref,
              State& q) {
    ref = hydrostatic_reference(Profile::constant_theta, 300.0, c, mesh, set);
    Field theta_p(mesh.num_nodes, 0.0);
    const double theta_c = 0.5, rc = 250.0, xc = 500.0, zc = 350.0;
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double r = std::hypot(mesh.x[i] - xc, mesh.z[i] - zc);
        if (r <= rc)
            theta_p[i] = 0.5 * theta_c * (1.0 + std::cos(M_PI * r / rc));
    }
    theta_perturbation_to_state(mesh, ref, theta_p, q);
}

void init_density_current(const Mesh& mesh, const PhysConstants& c, EquationSet set,
                          ReferenceState& ref, State& q) {
    ref = hydrostatic_reference(Profile::constant_theta, 300.0, c, mesh, set);
    Field theta_p(mesh.num_nodes, 0.0);
    const double theta_c = -15.0, xc = 0.0, zc = 3000.0, xr = 4000.0, zr = 2000.0;
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double rx = (mesh.x[i] - xc) / xr, rz = (mesh.z[i] - zc) / zr;
        const double r = std::sqrt(rx * rx + rz * rz);
        if (r <= 1.0)
            theta_p[i] = 0.5 * theta_c * (1.0 + std::cos(M_PI * r));
    }
    theta_perturbation_to_state(mesh, ref, theta_p, q);
}

void init_igw(const Mesh& mesh, const PhysConstants& c, EquationSet set, double mean_flow,
              ReferenceState& ref, State& q) {
    const double t0 = 250.0;
    ref = hydrostatic_reference(Profile::isothermal, t0, c, mesh, set);
    q = State(set, mesh.num_nodes);
    const double R = c.gas_constant();
    const double delta = c.g / (R * t0);
    const double rho_s = c.p_ref / (R * t0);
    const double dT = 0.001, hc = 10000.0, ac = 5000.0, xc = 100000.0;
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double x = mesh.x[i], z = mesh.z[i];
        const double xr = (x - xc) / ac;
        const double tb = dT * std::sin(M_PI * z / hc) * std::exp(-xr * xr);
        const double rb = -rho_s * tb / t0;
        const double t_p = std::exp(0.5 * delta * z) * tb;
        const double rho_p = std::exp(-0.5 * delta * z) * rb;
        const double rho = ref.rho0[i] + rho_p;
        const double temp = t0 + t_p;
        const double ux = rho * mean_flow;
        q.rho()[i] = rho_p;
        q.ux()[i] = ux;
        if (set == EquationSet::set2c) {
            // p from the (total) equation of state, theta from temperature
            const double p = rho * R * temp;
            const double theta = temp * std::pow(c.p_ref / p, R / c.cp);
            q.thermo()[i] = rho * theta - ref.thermo0[i];
        } else {
            q.thermo()[i] = rho * c.cv * temp + 0.5 * ux * ux / rho + rho * ref.phi[i] -
                            ref.thermo0[i];
        }
    }
}

void init_acoustic_channel(const Mesh& mesh, const PhysConstants& c, EquationSet set,
                           ReferenceState& ref, State& q) {
    ref = hydrostatic_reference(Profile::constant_theta, 300.0, c, mesh, set);
    q = State(set, mesh.num_nodes);
    const double dP = 100.0, xc = 0.5 * mesh.lx, rc = 0.25 * mesh.lx;
    const int nv = 1;
    const double R = c.gas_constant();
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double r = std::abs(mesh.x[i] - xc);
        double f = 0.0;
        if (r <= rc)
            f = 0.5 * dP * (1.0 + std::cos(M_PI * r / rc));
        const double pp = f * std::sin(nv * M_PI * mesh.z[i] / mesh.lz);
        // isentropic pulse: potential temperature unchanged
        const double p = ref.p0[i] + pp;
        const double theta = ref.theta0[i];
        const double big_theta = pressure_set2c_inverse(p, c);
        const double rho = big_theta / theta;
        q.rho()[i] = rho - ref.rho0[i];
        if (set == EquationSet::set2c) {
            q.thermo()[i] = big_theta - ref.thermo0[i];
        } else {
            const double temp = p / (rho * R);
            q.thermo()[i] = rho * c.cv * temp + rho * ref.phi[i] - ref.thermo0[i];
        }
    }
}

void initialize_case(const CaseSpec& spec, const Mesh& mesh, const PhysConstants& c,
                     EquationSet set, double mean_flow, ReferenceState& ref, State& q) {
    if (spec.name == "rtb")
        init_rtb(mesh, c, set, ref, q);
    else if (spec.name == "density-current")
        init_density_current(mesh, c, set, ref, q);
    else if (spec.name == "igw")
        init_igw(mesh, c, set, mean_flow, ref, q);
    else if (spec.name == "acoustic-channel")
        init_acoustic_channel(mesh, c, set, ref, q);
    else
        throw std::invalid_argument("initialize_case: unknown case " + spec.name);
}

} // namespace dgimex
