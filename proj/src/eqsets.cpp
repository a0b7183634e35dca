#include "dgimex/eqsets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgimex {

FluxConfig flux_config_from_name(const std::string& name) {
    std::string s;
    for (char c : name)
        s.push_back(std::tolower(c));
    if (s == "at") return FluxConfig::AT;
    if (s == "al") return FluxConfig::AL;
    if (s == "ct") return FluxConfig::CT;
    if (s == "cl") return FluxConfig::CL;
    if (s == "ca") return FluxConfig::CA;
    throw std::invalid_argument("unknown flux configuration: " + name);
}

std::string flux_config_name(FluxConfig cfg) {
    switch (cfg) {
    case FluxConfig::AT: return "at";
    case FluxConfig::AL: return "al";
    case FluxConfig::CT: return "ct";
    case FluxConfig::CL: return "cl";
    default: return "ca";
    }
}

bool is_centered_implicit(FluxConfig cfg) {
    return cfg == FluxConfig::CT || cfg == FluxConfig::CL || cfg == FluxConfig::CA;
}

double wave_speed(FluxConfig cfg, FluxPart part, const FaceTraces& t) {
    const double ustar = std::max(std::abs(t.un_left), std::abs(t.un_right));
    const double astar = std::max(std::abs(t.a_left), std::abs(t.a_right));
    const double lam_l = is_centered_implicit(cfg) ? 0.0 : t.a0;
    double lam_t = 0.0;
    switch (cfg) {
    case FluxConfig::AT:
    case FluxConfig::CT: lam_t = ustar + astar; break;
    case FluxConfig::AL:
    case FluxConfig::CL: lam_t = ustar + t.a0; break;
    case FluxConfig::CA: lam_t = ustar; break;
    }
    switch (part) {
    case FluxPart::linear: return lam_l;
    case FluxPart::total: return lam_t;
    default: return lam_t - lam_l;
    }
}

double pressure_set2c(double theta_total, const PhysConstants& c) {
    if (theta_total <= 0.0)
        throw std::runtime_error("pressure_set2c: non-positive potential-temperature density");
    return c.p_ref * std::pow(c.gas_constant() * theta_total / c.p_ref, c.gamma());
}

double pressure_set2c_inverse(double p, const PhysConstants& c) {
    return c.p_ref / c.gas_constant() * std::pow(p / c.p_ref, 1.0 / c.gamma());
}

double pressure_set3c(double rho, double ux, double uz, double e_total, double phi,
                      const PhysConstants& c) {
    if (rho <= 0.0)
        throw std::runtime_error("pressure_set3c: non-positive density");
    return (c.gamma() - 1.0) * (e_total - 0.5 * (ux * ux + uz * uz) / rho - rho * phi);
}

FluxRows total_flux_at(const ReferenceState& ref, int i, double rho_p, double ux, double uz,
                       double th_p) {
    const auto& c = ref.consts;
    const double rho = ref.rho0[i] + rho_p;
    double pp, transported;
    if (ref.set == EquationSet::set2c) {
        const double th = ref.thermo0[i] + th_p;
        pp = pressure_set2c(th, c) - ref.p0[i];
        transported = th / rho;
    } else {
        const double e = ref.thermo0[i] + th_p;
        const double p = pressure_set3c(rho, ux, uz, e, ref.phi[i], c);
        pp = p - ref.p0[i];
        transported = (e + p) / rho;
    }
    FluxRows f;
    f.fx = {ux, ux * ux / rho + pp, ux * uz / rho, transported * ux};
    f.fz = {uz, uz * ux / rho, uz * uz / rho + pp, transported * uz};
    return f;
}

FluxRows linear_flux_at(const ReferenceState& ref, int i, double rho_p, double ux, double uz,
                        double th_p) {
    const double pl = ref.eos_t[i] * th_p + ref.eos_r[i] * rho_p;
    FluxRows f;
    f.fx = {ux, pl, 0.0, ref.h[i] * ux};
    f.fz = {uz, 0.0, pl, ref.h[i] * uz};
    return f;
}

FluxRows total_flux(const State& q, const ReferenceState& ref, int i) {
    return total_flux_at(ref, i, q.rho()[i], q.ux()[i], q.uz()[i], q.thermo()[i]);
}

FluxRows linear_flux(const State& q, const ReferenceState& ref, int i) {
    return linear_flux_at(ref, i, q.rho()[i], q.ux()[i], q.uz()[i], q.thermo()[i]);
}

FluxRows nonlinear_flux(const State& q, const ReferenceState& ref, int i) {
    const FluxRows t = total_flux(q, ref, i);
    const FluxRows l = linear_flux(q, ref, i);
    FluxRows f;
    for (int v = 0; v < 4; ++v) {
        f.fx[v] = t.fx[v] - l.fx[v];
        f.fz[v] = t.fz[v] - l.fz[v];
    }
    return f;
}

namespace {

enum class Kernel { total, linear };

inline void face_nodes(const Mesh& m, int face, int q, int& oi, int& oj, int& ni, int& nj) {
    const int N = m.order();
    switch (face) {
    case face_left: oi = 0; oj = q; ni = N; nj = q; break;
    case face_right: oi = N; oj = q; ni = 0; nj = q; break;
    case face_bottom: oi = q; oj = 0; ni = q; nj = N; break;
    default: oi = q; oj = N; ni = q; nj = 0; break;
    }
}

void system_divergence(const Mesh& m, const ReferenceState& ref, const double* q,
                       FluxConfig cfg, FluxPart part, Kernel kernel, DgForm form, Dir dir,
                       TendencyWork& work, double* out) {
    const int n = m.num_nodes;
    const int n1 = m.n1();
    const auto& w = m.basis.weights;
    const auto& D = m.basis.diff;
    const double hx = 0.5 * m.dx, hz = 0.5 * m.dz;
    work.resize(n);

    const double* qv[4] = {q, q + n, q + 2 * n, q + 3 * n};
    double* ov[4] = {out, out + n, out + 2 * n, out + 3 * n};

    // nodal flux rows and trace quantities
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const FluxRows f =
            (kernel == Kernel::total)
                ? total_flux_at(ref, i, qv[0][i], qv[1][i], qv[2][i], qv[3][i])
                : linear_flux_at(ref, i, qv[0][i], qv[1][i], qv[2][i], qv[3][i]);
        for (int v = 0; v < 4; ++v) {
            work.fx[v][i] = f.fx[v];
            work.fz[v][i] = f.fz[v];
        }
        if (kernel == Kernel::total) {
            const double rho = ref.rho0[i] + qv[0][i];
            work.rho_tot[i] = rho;
            double p;
            if (ref.set == EquationSet::set2c)
                p = pressure_set2c(ref.thermo0[i] + qv[3][i], ref.consts);
            else
                p = pressure_set3c(rho, qv[1][i], qv[2][i], ref.thermo0[i] + qv[3][i],
                                   ref.phi[i], ref.consts);
            work.pprime[i] = p - ref.p0[i];
            work.asnd[i] = std::sqrt(ref.consts.gamma() * p / rho);
        }
    }

#pragma omp parallel for schedule(static)
    for (int e = 0; e < m.num_elements; ++e) {
        const int base = e * m.npe;
        for (int v = 0; v < 4; ++v)
            for (int i = 0; i < m.npe; ++i)
                ov[v][base + i] = 0.0;

        for (int v = 0; v < 4; ++v) {
            const double* fx = work.fx[v].data();
            const double* fz = work.fz[v].data();
            double* o = ov[v];
            if (form == DgForm::weak) {
                if (dir == Dir::all)
                    for (int j = 0; j < n1; ++j)
                        for (int i = 0; i < n1; ++i) {
                            double s = 0.0;
                            for (int k = 0; k < n1; ++k)
                                s += w[k] * D[k * n1 + i] * fx[base + j * n1 + k];
                            o[base + j * n1 + i] -= w[j] * hz * s;
                        }
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += w[k] * D[k * n1 + j] * fz[base + k * n1 + i];
                        o[base + j * n1 + i] -= w[i] * hx * s;
                    }
            } else {
                if (dir == Dir::all)
                    for (int j = 0; j < n1; ++j)
                        for (int i = 0; i < n1; ++i) {
                            double s = 0.0;
                            for (int k = 0; k < n1; ++k)
                                s += D[i * n1 + k] * fx[base + j * n1 + k];
                            o[base + j * n1 + i] += w[i] * w[j] * hz * s;
                        }
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += D[j * n1 + k] * fz[base + k * n1 + i];
                        o[base + j * n1 + i] += w[i] * w[j] * hx * s;
                    }
            }
        }

        for (int f = 0; f < 4; ++f) {
            const bool xface = (f == face_left || f == face_right);
            if (dir == Dir::vertical && xface)
                continue;
            const int k = m.nbr(e, f);
            const double wf_scale = xface ? hz : hx;
            const double nx = (f == face_left) ? -1.0 : (f == face_right) ? 1.0 : 0.0;
            const double nz = (f == face_bottom) ? -1.0 : (f == face_top) ? 1.0 : 0.0;
            // mirror ghost flips the sign of every flux row except the
            // normal-momentum one
            const int normal_mom = xface ? 1 : 2;
            for (int fq = 0; fq < n1; ++fq) {
                int oi, oj, ni, nj;
                face_nodes(m, f, fq, oi, oj, ni, nj);
                const int id_o = m.node(e, oi, oj);
                const int id_n = (k >= 0) ? m.node(k, ni, nj) : -1;

                double fn_own[4], fn_nbr[4], jump[4];
                for (int v = 0; v < 4; ++v)
                    fn_own[v] = xface ? work.fx[v][id_o] * nx : work.fz[v][id_o] * nz;
                if (id_n >= 0) {
                    for (int v = 0; v < 4; ++v) {
                        fn_nbr[v] = xface ? work.fx[v][id_n] * nx : work.fz[v][id_n] * nz;
                        jump[v] = qv[v][id_n] - qv[v][id_o];
                    }
                } else {
                    for (int v = 0; v < 4; ++v) {
                        fn_nbr[v] = (v == normal_mom) ? fn_own[v] : -fn_own[v];
                        jump[v] = 0.0;
                    }
                    jump[normal_mom] = -2.0 * qv[normal_mom][id_o];
                }

                double lambda;
                if (kernel == Kernel::linear) {
                    lambda = is_centered_implicit(cfg) ? 0.0 : ref.a0[id_o];
                } else {
                    FaceTraces t;
                    const double un_o =
                        (qv[1][id_o] * nx + qv[2][id_o] * nz) / work.rho_tot[id_o];
                    t.un_left = un_o;
                    t.a_left = work.asnd[id_o];
                    if (id_n >= 0) {
                        t.un_right = (qv[1][id_n] * nx + qv[2][id_n] * nz) / work.rho_tot[id_n];
                        t.a_right = work.asnd[id_n];
                    } else {
                        t.un_right = -un_o;
                        t.a_right = t.a_left;
                    }
                    t.a0 = ref.a0[id_o];
                    lambda = wave_speed(cfg, part, t);
                }

                for (int v = 0; v < 4; ++v) {
                    double flux = 0.5 * (fn_own[v] + fn_nbr[v]) - 0.5 * lambda * jump[v];
                    if (form == DgForm::strong)
                        flux -= fn_own[v];
                    ov[v][id_o] += w[fq] * wf_scale * flux;
                }
            }
        }

        // tendency = -M^{-1} * divergence integral + buoyancy source
        for (int v = 0; v < 4; ++v)
            for (int i = 0; i < m.npe; ++i)
                ov[v][base + i] = -ov[v][base + i] / m.mass[base + i];
        const double g = ref.consts.g;
        for (int i = 0; i < m.npe; ++i)
            ov[2][base + i] -= qv[0][base + i] * g;
    }
}

} // namespace

void spatial_tendency(const Mesh& mesh, const ReferenceState& ref, const double* q,
                      FluxConfig cfg, DgForm form, TendencyWork& work, double* out) {
    system_divergence(mesh, ref, q, cfg, FluxPart::total, Kernel::total, form, Dir::all, work,
                      out);
}

void spatial_tendency(const Mesh& mesh, const ReferenceState& ref, const State& q,
                      FluxConfig cfg, DgForm form, TendencyWork& work, State& out) {
    spatial_tendency(mesh, ref, q.data.data(), cfg, form, work, out.data.data());
}

void linear_tendency(const Mesh& mesh, const ReferenceState& ref, const double* q,
                     FluxConfig cfg, DgForm form, Dir dir, TendencyWork& work, double* out) {
    system_divergence(mesh, ref, q, cfg, FluxPart::linear, Kernel::linear, form, dir, work,
                      out);
}

void linear_tendency(const Mesh& mesh, const ReferenceState& ref, const State& q,
                     FluxConfig cfg, DgForm form, Dir dir, TendencyWork& work, State& out) {
    linear_tendency(mesh, ref, q.data.data(), cfg, form, dir, work, out.data.data());
}

std::array<double, 9> linear_flux_jacobian_1d(const ReferenceState& ref, int i) {
    // rows (mass, momentum, thermo) of d(U, P_L, h U)/d(rho, U, thermo)
    return {0.0,          1.0,      0.0, //
            ref.eos_r[i], 0.0,      ref.eos_t[i],
            0.0,          ref.h[i], 0.0};
}

std::array<double, 3> nonlinear_wavespeeds_1d(double rho, double u_mom, double e_total,
                                              double phi, double h0, const PhysConstants& c) {
    const double gam = c.gamma();
    auto fnl = [&](double r, double u, double en) {
        const double p = (gam - 1.0) * (en - 0.5 * u * u / r - r * phi);
        const double pl = (gam - 1.0) * (en - r * phi);
        return Eigen::Vector3d(0.0, u * u / r + p - pl, ((en + p) / r - h0) * u);
    };
    Eigen::Matrix3d jac;
    const double qbase[3] = {rho, u_mom, e_total};
    for (int col = 0; col < 3; ++col) {
        double qp[3] = {rho, u_mom, e_total};
        double qm[3] = {rho, u_mom, e_total};
        const double eps = std::max(1e-7 * std::abs(qbase[col]), 1e-9);
        qp[col] += eps;
        qm[col] -= eps;
        jac.col(col) =
            (fnl(qp[0], qp[1], qp[2]) - fnl(qm[0], qm[1], qm[2])) / (2.0 * eps);
    }
    Eigen::EigenSolver<Eigen::Matrix3d> es(jac);
    std::array<double, 3> ev = {es.eigenvalues()(0).real(), es.eigenvalues()(1).real(),
                                es.eigenvalues()(2).real()};
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace dgimex
