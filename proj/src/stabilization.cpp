#include "dgimex/stabilization.hpp"

#include <cmath>
#include <stdexcept>

namespace dgimex {

double eddy_viscosity_vreman(const double grad[2][2], double cs, double dx2, double dz2) {
    // alpha_ij = du_j/dx_i over (x,z); the out-of-plane direction drops out
    const double a11 = grad[0][0], a13 = grad[0][1];
    const double a31 = grad[1][0], a33 = grad[1][1];
    const double aa = a11 * a11 + a13 * a13 + a31 * a31 + a33 * a33;
    if (aa <= 0.0)
        return 0.0;
    const double b11 = dx2 * a11 * a11 + dz2 * a31 * a31;
    const double b13 = dx2 * a11 * a13 + dz2 * a31 * a33;
    const double b33 = dx2 * a13 * a13 + dz2 * a33 * a33;
    const double bbeta = std::max(b11 * b33 - b13 * b13, 0.0);
    return 2.5 * cs * cs * std::sqrt(bbeta / aa);
}

void stabilization_viscosity(const Mesh& m, const ReferenceState& ref, const double* q,
                             const StabConfig& cfg, Field& nu) {
    nu.assign(m.num_nodes, 0.0);
    if (cfg.mode == StabMode::none)
        return;
    if (cfg.nu < 0.0 || cfg.cs < 0.0)
        throw std::invalid_argument("stabilization: negative coefficient");
    if (cfg.mode == StabMode::constant_nu) {
        nu.assign(m.num_nodes, cfg.nu);
        return;
    }
    if (m.npe > 128)
        throw std::invalid_argument("stabilization: element order too large");
    const int n = m.num_nodes;
    const int n1 = m.n1();
    const double two_dx = 2.0 / m.dx, two_dz = 2.0 / m.dz;
    const double dxs = m.dx / m.order(), dzs = m.dz / m.order();
    const double dx2 = dxs * dxs, dz2 = dzs * dzs;
#pragma omp parallel for schedule(static)
    for (int e = 0; e < m.num_elements; ++e) {
        const int base = e * m.npe;
        double u[2][128]; // velocity components per element node, order <= 10
        for (int i = 0; i < m.npe; ++i) {
            const double rho = ref.rho0[base + i] + q[base + i];
            u[0][i] = q[n + base + i] / rho;
            u[1][i] = q[2 * n + base + i] / rho;
        }
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n1; ++i) {
                double g[2][2] = {{0, 0}, {0, 0}};
                for (int k = 0; k < n1; ++k) {
                    const double dxi = m.basis.d(i, k);
                    const double dzj = m.basis.d(j, k);
                    for (int comp = 0; comp < 2; ++comp) {
                        g[0][comp] += dxi * u[comp][j * n1 + k] * two_dx;
                        g[1][comp] += dzj * u[comp][k * n1 + i] * two_dz;
                    }
                }
                nu[base + j * n1 + i] = eddy_viscosity_vreman(g, cfg.cs, dx2, dz2);
            }
    }
}

void apply_stabilization(const Mesh& m, const ReferenceState& ref, const double* q,
                         const StabConfig& cfg, StabWork& work, double* tendency) {
    if (cfg.mode == StabMode::none)
        return;
    stabilization_viscosity(m, ref, q, cfg, work.nu);
    work.lap.assign(m.num_nodes, 0.0);
    const int n = m.num_nodes;

    auto add = [&](const double* field, double* tend) {
        ldg_laplacian_integral(m, field, work.nu.data(), work.ldg, work.lap.data());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < (long)n; ++i)
            tend[i] += work.lap[i] / m.mass[i];
    };
    if (cfg.on_momentum) {
        add(q + n, tendency + n);
        add(q + 2 * n, tendency + 2 * n);
    }
    if (cfg.on_thermo)
        add(q + 3 * n, tendency + 3 * n);
}

void apply_stabilization(const Mesh& m, const ReferenceState& ref, const State& q,
                         const StabConfig& cfg, StabWork& work, State& tendency) {
    apply_stabilization(m, ref, q.data.data(), cfg, work, tendency.data.data());
}

} // namespace dgimex
