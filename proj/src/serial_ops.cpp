#include "dgimex/ref/serial_ops.hpp"

#include <vector>

namespace dgimex::serial {

namespace {

// nodal value of the numerical trace at a face point
double trace(double own, double nbr, bool has_nbr, FaceFlux flux, WallRule wall, bool down_own,
             bool scalar) {
    if (!has_nbr) {
        if (scalar)
            return (wall == WallRule::zero) ? 0.0 : own;
        switch (wall) {
        case WallRule::copy: return own;
        default: return 0.0;
        }
    }
    switch (flux) {
    case FaceFlux::centered: return 0.5 * (own + nbr);
    case FaceFlux::take_down: return down_own ? own : nbr;
    default: return down_own ? nbr : own;
    }
}

struct FacePoint {
    int own, nbr; // node ids, nbr = -1 at walls
    double nx, nz, weight;
    bool down_own;
};

std::vector<FacePoint> face_points(const Mesh& m, int e, int f) {
    const int N = m.order();
    std::vector<FacePoint> pts;
    const int k = m.nbr(e, f);
    for (int q = 0; q <= N; ++q) {
        FacePoint p{};
        switch (f) {
        case face_left:
            p.own = m.node(e, 0, q);
            p.nbr = k >= 0 ? m.node(k, N, q) : -1;
            p.nx = -1;
            p.weight = m.basis.weights[q] * 0.5 * m.dz;
            p.down_own = false;
            break;
        case face_right:
            p.own = m.node(e, N, q);
            p.nbr = k >= 0 ? m.node(k, 0, q) : -1;
            p.nx = 1;
            p.weight = m.basis.weights[q] * 0.5 * m.dz;
            p.down_own = true;
            break;
        case face_bottom:
            p.own = m.node(e, q, 0);
            p.nbr = k >= 0 ? m.node(k, q, N) : -1;
            p.nz = -1;
            p.weight = m.basis.weights[q] * 0.5 * m.dx;
            p.down_own = false;
            break;
        default:
            p.own = m.node(e, q, N);
            p.nbr = k >= 0 ? m.node(k, q, 0) : -1;
            p.nz = 1;
            p.weight = m.basis.weights[q] * 0.5 * m.dx;
            p.down_own = true;
            break;
        }
        pts.push_back(p);
    }
    return pts;
}

} // namespace

void div_integral(const Mesh& m, const double* fx, const double* fz, DgForm form, Dir dir,
                  FaceFlux flux, WallRule wall, double* out) {
    const int n1 = m.n1();
    for (int i = 0; i < m.num_nodes; ++i)
        out[i] = 0.0;
    for (int e = 0; e < m.num_elements; ++e) {
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n1; ++i) {
                const int id = m.node(e, i, j);
                double sx = 0.0, sz = 0.0;
                for (int k = 0; k < n1; ++k) {
                    if (form == DgForm::weak) {
                        sx += m.basis.weights[k] * m.basis.d(k, i) * fx[m.node(e, k, j)];
                        sz += m.basis.weights[k] * m.basis.d(k, j) * fz[m.node(e, i, k)];
                    } else {
                        sx += m.basis.d(i, k) * fx[m.node(e, k, j)];
                        sz += m.basis.d(j, k) * fz[m.node(e, i, k)];
                    }
                }
                const double wz = m.basis.weights[j] * 0.5 * m.dz;
                const double wx = m.basis.weights[i] * 0.5 * m.dx;
                if (form == DgForm::weak) {
                    if (dir == Dir::all)
                        out[id] -= wz * sx;
                    out[id] -= wx * sz;
                } else {
                    if (dir == Dir::all)
                        out[id] += m.basis.weights[i] * m.basis.weights[j] * 0.5 * m.dz * sx;
                    out[id] += m.basis.weights[i] * m.basis.weights[j] * 0.5 * m.dx * sz;
                }
            }
        for (int f = 0; f < 4; ++f) {
            if (dir == Dir::vertical && (f == face_left || f == face_right))
                continue;
            for (const FacePoint& pt : face_points(m, e, f)) {
                const double fo = fx[pt.own] * pt.nx + fz[pt.own] * pt.nz;
                const double fn =
                    pt.nbr >= 0 ? fx[pt.nbr] * pt.nx + fz[pt.nbr] * pt.nz : 0.0;
                double val = trace(fo, fn, pt.nbr >= 0, flux, wall, pt.down_own, false);
                if (form == DgForm::strong)
                    val -= fo;
                out[pt.own] += pt.weight * val;
            }
        }
    }
}

void grad_integral(const Mesh& m, const double* p, DgForm form, Dir dir, FaceFlux flux,
                   WallRule wall, double* outx, double* outz) {
    const int n1 = m.n1();
    for (int i = 0; i < m.num_nodes; ++i) {
        outx[i] = 0.0;
        outz[i] = 0.0;
    }
    for (int e = 0; e < m.num_elements; ++e) {
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n1; ++i) {
                const int id = m.node(e, i, j);
                double sx = 0.0, sz = 0.0;
                for (int k = 0; k < n1; ++k) {
                    if (form == DgForm::weak) {
                        sx += m.basis.weights[k] * m.basis.d(k, i) * p[m.node(e, k, j)];
                        sz += m.basis.weights[k] * m.basis.d(k, j) * p[m.node(e, i, k)];
                    } else {
                        sx += m.basis.d(i, k) * p[m.node(e, k, j)];
                        sz += m.basis.d(j, k) * p[m.node(e, i, k)];
                    }
                }
                const double wz = m.basis.weights[j] * 0.5 * m.dz;
                const double wx = m.basis.weights[i] * 0.5 * m.dx;
                if (form == DgForm::weak) {
                    if (dir == Dir::all)
                        outx[id] -= wz * sx;
                    outz[id] -= wx * sz;
                } else {
                    if (dir == Dir::all)
                        outx[id] += m.basis.weights[i] * m.basis.weights[j] * 0.5 * m.dz * sx;
                    outz[id] += m.basis.weights[i] * m.basis.weights[j] * 0.5 * m.dx * sz;
                }
            }
        for (int f = 0; f < 4; ++f) {
            if (dir == Dir::vertical && (f == face_left || f == face_right))
                continue;
            for (const FacePoint& pt : face_points(m, e, f)) {
                double val =
                    trace(p[pt.own], pt.nbr >= 0 ? p[pt.nbr] : 0.0, pt.nbr >= 0, flux, wall,
                          pt.down_own, true);
                if (form == DgForm::strong)
                    val -= p[pt.own];
                outx[pt.own] += pt.weight * val * pt.nx;
                outz[pt.own] += pt.weight * val * pt.nz;
            }
        }
    }
}

void ldg_laplacian_integral(const Mesh& m, const double* q, const double* nu, double* out) {
    std::vector<double> gx(m.num_nodes), gz(m.num_nodes);
    grad_integral(m, q, DgForm::weak, Dir::all, FaceFlux::take_down, WallRule::copy, gx.data(),
                  gz.data());
    for (int i = 0; i < m.num_nodes; ++i) {
        gx[i] *= nu[i] / m.mass[i];
        gz[i] *= nu[i] / m.mass[i];
    }
    div_integral(m, gx.data(), gz.data(), DgForm::weak, Dir::all, FaceFlux::take_up,
                 WallRule::zero, out);
}

} // namespace dgimex::serial
