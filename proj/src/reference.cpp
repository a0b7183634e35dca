#include "dgimex/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "dgimex/dg_ops.hpp"

namespace dgimex {

ReferenceState hydrostatic_reference(Profile profile, double temp_param,
                                     const PhysConstants& consts, const Mesh& mesh,
                                     EquationSet set) {
    const int n = mesh.num_nodes;
    const double R = consts.gas_constant(), cp = consts.cp, cv = consts.cv;
    const double gam = consts.gamma(), g = consts.g, pa = consts.p_ref;

    ReferenceState ref;
    ref.set = set;
    ref.consts = consts;
    ref.profile = profile;
    ref.profile_temp = temp_param;
    ref.rho0.resize(n);
    ref.p0.resize(n);
    ref.theta0.resize(n);
    ref.thermo0.resize(n);
    ref.phi.resize(n);
    ref.h.resize(n);
    ref.dhdz.resize(n);
    ref.bigF.resize(n);
    ref.gvert.resize(n);
    ref.a0.resize(n);
    ref.eos_t.resize(n);
    ref.eos_r.resize(n);
    ref.w_sym.resize(n);

    if (temp_param <= 0.0)
        throw std::invalid_argument("hydrostatic_reference: temperature must be positive");

    for (int i = 0; i < n; ++i) {
        const double z = mesh.z[i];
        ref.phi[i] = g * z;
        double p, rho, temp;
        if (profile == Profile::constant_theta) {
            const double th0 = temp_param;
            const double exner = 1.0 - g * z / (cp * th0);
            if (exner <= 0.0)
                throw std::invalid_argument(
                    "hydrostatic_reference: constant-theta profile reaches non-positive pressure");
            p = pa * std::pow(exner, cp / R);
            temp = th0 * exner;
            rho = p / (R * temp);
            ref.theta0[i] = th0;
        } else {
            const double t0 = temp_param;
            const double delta = g / (R * t0);
            p = pa * std::exp(-delta * z);
            rho = p / (R * t0);
            temp = t0;
            ref.theta0[i] = t0 * std::pow(pa / p, R / cp);
        }
        ref.p0[i] = p;
        ref.rho0[i] = rho;
        ref.a0[i] = std::sqrt(gam * p / rho);

        if (set == EquationSet::set2c) {
            const double th_dens = rho * ref.theta0[i];
            ref.thermo0[i] = th_dens;
            ref.h[i] = ref.theta0[i];
            if (profile == Profile::constant_theta)
                ref.dhdz[i] = 0.0;
            else
                ref.dhdz[i] = ref.theta0[i] * (g / (R * temp_param)) * (R / cp);
            ref.bigF[i] = ref.h[i];
            ref.gvert[i] = g / ref.h[i];
            ref.eos_t[i] = gam * p / th_dens;
            ref.eos_r[i] = 0.0;
            // dw/w = g*rho0/(gamma*p0)
            if (profile == Profile::constant_theta) {
                const double exner = 1.0 - g * z / (cp * temp_param);
                ref.w_sym[i] = std::pow(exner, -cp / (gam * R));
            } else {
                ref.w_sym[i] = std::exp(g * z / (gam * R * temp_param));
            }
        } else {
            const double e0 = rho * cv * temp + rho * ref.phi[i];
            ref.thermo0[i] = e0;
            ref.h[i] = (e0 + p) / rho;
            if (profile == Profile::constant_theta)
                ref.dhdz[i] = 0.0; // h = cp*theta0 exactly
            else
                ref.dhdz[i] = g; // h = cp*T0 + phi
            ref.bigF[i] = ref.h[i] - ref.phi[i];
            if (ref.bigF[i] <= 0.0)
                throw std::invalid_argument("hydrostatic_reference: F = h - phi not positive");
            ref.gvert[i] = g / ref.bigF[i];
            ref.eos_t[i] = gam - 1.0;
            ref.eos_r[i] = -(gam - 1.0) * ref.phi[i];
            // dw/w = gamma/(gamma-1) * G
            if (profile == Profile::constant_theta) {
                ref.w_sym[i] = std::pow(ref.bigF[i] / (cp * temp_param), -gam / (gam - 1.0));
            } else {
                ref.w_sym[i] = std::exp(gam / (gam - 1.0) * g * z / (cp * temp_param));
            }
        }
    }

    // Record the discrete hydrostatic-balance defect of the sampled profile.
    Field gx(n), gz(n);
    grad_h(mesh, ref.p0.data(), DgForm::weak, Dir::all, gx.data(), gz.data());
    double res = 0.0;
    for (int i = 0; i < n; ++i)
        res = std::max(res, std::abs(gz[i] + ref.rho0[i] * g));
    ref.hydro_residual = res;
    return ref;
}

} // namespace dgimex
