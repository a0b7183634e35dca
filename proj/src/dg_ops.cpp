#include "dgimex/dg_ops.hpp"

#include <cstring>

namespace dgimex {

namespace {

struct FaceGeom {
    int face;
    int oi, oj;     // own node (i,j) as a function of the running index q
    int ni, nj;     // neighbor node
    double nx, nz;
    bool own_is_down; // owner on the lower-coordinate side of the face
};

// own/neighbor (i,j): entries of -1 mean "use q"
inline void face_nodes(const Mesh& m, int face, int q, int& oi, int& oj, int& ni, int& nj) {
    const int N = m.order();
    switch (face) {
    case face_left: oi = 0; oj = q; ni = N; nj = q; break;
    case face_right: oi = N; oj = q; ni = 0; nj = q; break;
    case face_bottom: oi = q; oj = 0; ni = q; nj = N; break;
    default: oi = q; oj = N; ni = q; nj = 0; break;
    }
}

inline bool own_is_down(int face) { return face == face_right || face == face_top; }

// numerical trace of a scalar quantity across a face
inline double face_trace(double own, double nbr, bool has_nbr, FaceFlux flux, WallRule wall,
                         bool down_is_own) {
    if (!has_nbr) {
        switch (wall) {
        case WallRule::copy: return own;
        case WallRule::mirror: return 0.0; // ghost negates: average vanishes
        case WallRule::zero: return 0.0;
        }
    }
    switch (flux) {
    case FaceFlux::centered: return 0.5 * (own + nbr);
    case FaceFlux::take_down: return down_is_own ? own : nbr;
    default: return down_is_own ? nbr : own;
    }
}

} // namespace

void div_integral(const Mesh& m, const double* fx, const double* fz, DgForm form, Dir dir,
                  FaceFlux flux, WallRule wall, double* out) {
    const int n1 = m.n1();
    const auto& w = m.basis.weights;
    const auto& D = m.basis.diff;
    const double hx = 0.5 * m.dx, hz = 0.5 * m.dz;

#pragma omp parallel for schedule(static)
    for (int e = 0; e < m.num_elements; ++e) {
        const int base = e * m.npe;
        for (int i = 0; i < m.npe; ++i)
            out[base + i] = 0.0;

        if (form == DgForm::weak) {
            if (dir == Dir::all)
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += w[k] * D[k * n1 + i] * fx[base + j * n1 + k];
                        out[base + j * n1 + i] -= w[j] * hz * s;
                    }
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int k = 0; k < n1; ++k)
                        s += w[k] * D[k * n1 + j] * fz[base + k * n1 + i];
                    out[base + j * n1 + i] -= w[i] * hx * s;
                }
        } else {
            if (dir == Dir::all)
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += D[i * n1 + k] * fx[base + j * n1 + k];
                        out[base + j * n1 + i] += w[i] * w[j] * hz * s;
                    }
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int k = 0; k < n1; ++k)
                        s += D[j * n1 + k] * fz[base + k * n1 + i];
                    out[base + j * n1 + i] += w[i] * w[j] * hx * s;
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
            const bool down = own_is_down(f);
            for (int q = 0; q < n1; ++q) {
                int oi, oj, ni, nj;
                face_nodes(m, f, q, oi, oj, ni, nj);
                const int id_o = m.node(e, oi, oj);
                const double fn_own = xface ? fx[id_o] * nx : fz[id_o] * nz;
                double fn_nbr = 0.0;
                if (k >= 0) {
                    const int id_n = m.node(k, ni, nj);
                    fn_nbr = xface ? fx[id_n] * nx : fz[id_n] * nz;
                }
                double flux_val = face_trace(fn_own, fn_nbr, k >= 0, flux, wall, down);
                if (form == DgForm::strong)
                    flux_val -= fn_own;
                out[id_o] += w[q] * wf_scale * flux_val;
            }
        }
    }
}

void grad_integral(const Mesh& m, const double* p, DgForm form, Dir dir, FaceFlux flux,
                   WallRule wall, double* outx, double* outz) {
    const int n1 = m.n1();
    const auto& w = m.basis.weights;
    const auto& D = m.basis.diff;
    const double hx = 0.5 * m.dx, hz = 0.5 * m.dz;

#pragma omp parallel for schedule(static)
    for (int e = 0; e < m.num_elements; ++e) {
        const int base = e * m.npe;
        for (int i = 0; i < m.npe; ++i) {
            outx[base + i] = 0.0;
            outz[base + i] = 0.0;
        }

        if (form == DgForm::weak) {
            if (dir == Dir::all)
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += w[k] * D[k * n1 + i] * p[base + j * n1 + k];
                        outx[base + j * n1 + i] -= w[j] * hz * s;
                    }
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int k = 0; k < n1; ++k)
                        s += w[k] * D[k * n1 + j] * p[base + k * n1 + i];
                    outz[base + j * n1 + i] -= w[i] * hx * s;
                }
        } else {
            if (dir == Dir::all)
                for (int j = 0; j < n1; ++j)
                    for (int i = 0; i < n1; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n1; ++k)
                            s += D[i * n1 + k] * p[base + j * n1 + k];
                        outx[base + j * n1 + i] += w[i] * w[j] * hz * s;
                    }
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int k = 0; k < n1; ++k)
                        s += D[j * n1 + k] * p[base + k * n1 + i];
                    outz[base + j * n1 + i] += w[i] * w[j] * hx * s;
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
            const bool down = own_is_down(f);
            for (int q = 0; q < n1; ++q) {
                int oi, oj, ni, nj;
                face_nodes(m, f, q, oi, oj, ni, nj);
                const int id_o = m.node(e, oi, oj);
                const double p_own = p[id_o];
                double p_nbr = 0.0;
                if (k >= 0)
                    p_nbr = p[m.node(k, ni, nj)];
                double ptilde;
                if (k < 0) {
                    // scalar ghost at walls: copy (mirror/zero not meaningful here)
                    ptilde = (wall == WallRule::zero) ? 0.0 : p_own;
                } else {
                    ptilde = face_trace(p_own, p_nbr, true, flux, wall, down);
                }
                if (form == DgForm::strong)
                    ptilde -= p_own;
                const double c = w[q] * wf_scale * ptilde;
                if (xface)
                    outx[id_o] += c * nx;
                else
                    outz[id_o] += c * nz;
            }
        }
    }
}

void ldg_laplacian_integral(const Mesh& m, const double* q, const double* nu, LdgWork& work,
                            double* out) {
    work.resize(m.num_nodes);
    grad_integral(m, q, DgForm::weak, Dir::all, FaceFlux::take_down, WallRule::copy,
                  work.gx.data(), work.gz.data());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)m.num_nodes; ++i) {
        const double mi = 1.0 / m.mass[i];
        work.gx[i] *= mi * nu[i];
        work.gz[i] *= mi * nu[i];
    }
    div_integral(m, work.gx.data(), work.gz.data(), DgForm::weak, Dir::all, FaceFlux::take_up,
                 WallRule::zero, out);
}

void div_h(const Mesh& m, const double* fx, const double* fz, DgForm form, Dir dir,
           WallRule wall, double* out) {
    div_integral(m, fx, fz, form, dir, FaceFlux::centered, wall, out);
    apply_mass_inverse(m, out);
}

void grad_h(const Mesh& m, const double* p, DgForm form, Dir dir, double* outx, double* outz) {
    grad_integral(m, p, form, dir, FaceFlux::centered, WallRule::copy, outx, outz);
    apply_mass_inverse(m, outx);
    apply_mass_inverse(m, outz);
}

} // namespace dgimex
