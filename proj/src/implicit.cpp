#include "dgimex/implicit.hpp"

#include <cmath>
#include <stdexcept>

namespace dgimex {

namespace {

inline bool is2c(const ImplicitContext& ctx) { return ctx.ref->set == EquationSet::set2c; }

} // namespace

void no_schur_apply(const ImplicitContext& ctx, double alpha, const std::vector<double>& x,
                    std::vector<double>& y, ImplicitWork& work) {
    const Mesh& m = *ctx.mesh;
    const int n = m.num_nodes;
    y.resize(4 * (size_t)n);
    linear_tendency(m, *ctx.ref, x.data(), ctx.flux, ctx.form, ctx.dir, work.tw, y.data());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)(4 * (size_t)n); ++i)
        y[i] = x[i] - alpha * y[i];
}

void schur_apply(const ImplicitContext& ctx, double alpha, const std::vector<double>& p,
                 std::vector<double>& out, ImplicitWork& work) {
    const Mesh& m = *ctx.mesh;
    const ReferenceState& ref = *ctx.ref;
    const int n = m.num_nodes;
    work.resize(n);
    out.resize(n);
    const double gam = ref.consts.gamma();

    grad_h(m, p.data(), ctx.form, ctx.dir, work.gx.data(), work.gz.data());
    const bool two_c = is2c(ctx);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double ar = ref.ar(alpha, i);
        const double avert = two_c ? ref.gvert[i] / ref.eos_t[i] : ref.gvert[i] / (gam - 1.0);
        const double yx = (ctx.dir == Dir::all) ? work.gx[i] : 0.0;
        const double yz = (work.gz[i] + avert * p[i]) / ar;
        work.yx[i] = yx;
        work.yz[i] = yz;
        work.rx[i] = ref.h[i] * yx;
        work.rz[i] = ref.h[i] * yz;
    }
    div_h(m, work.rx.data(), work.rz.data(), ctx.form, ctx.dir, WallRule::mirror,
          work.d1.data());
    if (two_c) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            out[i] = p[i] - alpha * alpha * ref.eos_t[i] * work.d1[i];
    } else {
        div_h(m, work.yx.data(), work.yz.data(), ctx.form, ctx.dir, WallRule::mirror,
              work.d2.data());
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            out[i] = p[i] - alpha * alpha * (gam - 1.0) *
                                (work.d1[i] - ref.phi[i] * work.d2[i]);
    }
}

void schur_rhs(const ImplicitContext& ctx, double alpha, const std::vector<double>& qhat,
               std::vector<double>& rhs, ImplicitWork& work) {
    const Mesh& m = *ctx.mesh;
    const ReferenceState& ref = *ctx.ref;
    const int n = m.num_nodes;
    work.resize(n);
    rhs.resize(n);
    const double gam = ref.consts.gamma();
    const double g = ref.consts.g;
    const double* rh = qhat.data();
    const double* uxh = qhat.data() + n;
    const double* uzh = qhat.data() + 2 * n;
    const double* th = qhat.data() + 3 * n;
    const bool two_c = is2c(ctx);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double ar = ref.ar(alpha, i);
        double rz;
        if (two_c)
            rz = (uzh[i] - alpha * (rh[i] * g - ref.gvert[i] * th[i])) / ar;
        else
            rz = (uzh[i] - alpha * ref.gvert[i] * (ref.h[i] * rh[i] - th[i])) / ar;
        const double rx = (ctx.dir == Dir::all) ? uxh[i] : 0.0;
        work.yx[i] = rx;
        work.yz[i] = rz;
        work.rx[i] = ref.h[i] * rx;
        work.rz[i] = ref.h[i] * rz;
    }
    div_h(m, work.rx.data(), work.rz.data(), ctx.form, ctx.dir, WallRule::mirror,
          work.d1.data());
    if (two_c) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            rhs[i] = ref.eos_t[i] * (th[i] - alpha * work.d1[i]);
    } else {
        div_h(m, work.yx.data(), work.yz.data(), ctx.form, ctx.dir, WallRule::mirror,
              work.d2.data());
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            rhs[i] = (gam - 1.0) * (th[i] - ref.phi[i] * rh[i] -
                                    alpha * (work.d1[i] - ref.phi[i] * work.d2[i]));
    }
}

void back_substitute(const ImplicitContext& ctx, double alpha, const std::vector<double>& p,
                     const std::vector<double>& qhat, std::vector<double>& q_tt,
                     ImplicitWork& work) {
    const Mesh& m = *ctx.mesh;
    const ReferenceState& ref = *ctx.ref;
    const int n = m.num_nodes;
    work.resize(n);
    q_tt.resize(4 * (size_t)n);
    const double gam = ref.consts.gamma();
    const double g = ref.consts.g;
    const double* rh = qhat.data();
    const double* uxh = qhat.data() + n;
    const double* uzh = qhat.data() + 2 * n;
    const double* th = qhat.data() + 3 * n;
    double* rho = q_tt.data();
    double* ux = q_tt.data() + n;
    double* uz = q_tt.data() + 2 * n;
    double* te = q_tt.data() + 3 * n;
    const bool two_c = is2c(ctx);

    grad_h(m, p.data(), ctx.form, ctx.dir, work.gx.data(), work.gz.data());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double ar = ref.ar(alpha, i);
        ux[i] = (ctx.dir == Dir::all) ? uxh[i] - alpha * work.gx[i] : uxh[i];
        if (two_c) {
            const double om = ref.eos_t[i];
            uz[i] = (uzh[i] - alpha * (work.gz[i] + rh[i] * g - ref.gvert[i] * th[i] +
                                       ref.gvert[i] * p[i] / om)) /
                    ar;
            rho[i] = rh[i] - th[i] / ref.h[i] + p[i] / (ref.h[i] * om) +
                     alpha / ref.h[i] * ref.dhdz[i] * uz[i];
            te[i] = p[i] / om;
        } else {
            uz[i] = (uzh[i] - alpha * ref.gvert[i] * (ref.h[i] * rh[i] - th[i]) -
                     alpha * work.gz[i] - alpha * ref.gvert[i] * p[i] / (gam - 1.0)) /
                    ar;
            rho[i] = (p[i] / (gam - 1.0) + alpha * ref.dhdz[i] * uz[i] + ref.h[i] * rh[i] -
                      th[i]) /
                     ref.bigF[i];
            te[i] = ref.h[i] * rho[i] + th[i] - ref.h[i] * rh[i] -
                    alpha * ref.dhdz[i] * uz[i];
        }
    }
}

void schur_sym_weight(const ImplicitContext& ctx, Field& lambda) {
    const Mesh& m = *ctx.mesh;
    const ReferenceState& ref = *ctx.ref;
    lambda.resize(m.num_nodes);
    for (int i = 0; i < m.num_nodes; ++i)
        lambda[i] = m.mass[i] * ref.w_sym[i] / ref.eos_t[i];
}

OperatorHandle make_no_schur_handle(const ImplicitContext& ctx, double alpha) {
    OperatorHandle h;
    h.n = 4 * ctx.mesh->num_nodes;
    h.kind = (ctx.dir == Dir::all) ? "no-schur-all" : "no-schur-column";
    auto work = std::make_shared<ImplicitWork>();
    h.apply = [ctx, alpha, work](const std::vector<double>& x, std::vector<double>& y) {
        no_schur_apply(ctx, alpha, x, y, *work);
    };
    return h;
}

OperatorHandle make_schur_handle(const ImplicitContext& ctx, double alpha, bool symmetrized) {
    OperatorHandle h;
    h.n = ctx.mesh->num_nodes;
    h.kind = (ctx.dir == Dir::all) ? "schur-all" : "schur-column";
    auto work = std::make_shared<ImplicitWork>();
    if (!symmetrized) {
        h.apply = [ctx, alpha, work](const std::vector<double>& x, std::vector<double>& y) {
            schur_apply(ctx, alpha, x, y, *work);
        };
    } else {
        auto lam = std::make_shared<Field>();
        schur_sym_weight(ctx, *lam);
        auto lam_half = std::make_shared<Field>(lam->size());
        for (size_t i = 0; i < lam->size(); ++i)
            (*lam_half)[i] = std::sqrt((*lam)[i]);
        h.kind += "-sym";
        h.apply = [ctx, alpha, work, lam_half](const std::vector<double>& x,
                                               std::vector<double>& y) {
            std::vector<double> xs(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                xs[i] = x[i] / (*lam_half)[i];
            schur_apply(ctx, alpha, xs, y, *work);
            for (size_t i = 0; i < y.size(); ++i)
                y[i] *= (*lam_half)[i];
        };
    }
    return h;
}

// ---------------------------------------------------------------------------
// Column-restricted applies and banded assembly
// ---------------------------------------------------------------------------

namespace {

struct ColGeom {
    int nez, n1, ncol;
    double hz;
    Bc bot, top;
    const LglBasis* basis;

    double mass1(int k) const { return basis->weights[k % n1] * hz; }
};

ColGeom col_geom(const Mesh& m) {
    if (m.bc.bottom == Bc::periodic || m.bc.top == Bc::periodic)
        throw std::invalid_argument("column systems require wall top/bottom boundaries");
    return {m.nez, m.n1(), m.column_size(), 0.5 * m.dz, m.bc.bottom, m.bc.top, &m.basis};
}

// 1D weak/strong gradient integral of a scalar (centered faces, copy walls)
void col_grad_int(const ColGeom& gm, DgForm form, const double* p, double* out) {
    const int n1 = gm.n1;
    const auto& w = gm.basis->weights;
    const auto& D = gm.basis->diff;
    for (int e = 0; e < gm.nez; ++e) {
        const int base = e * n1;
        for (int j = 0; j < n1; ++j) {
            double s = 0.0;
            if (form == DgForm::weak) {
                for (int k = 0; k < n1; ++k)
                    s -= w[k] * D[k * n1 + j] * p[base + k];
            } else {
                for (int k = 0; k < n1; ++k)
                    s += w[j] * D[j * n1 + k] * p[base + k];
            }
            out[base + j] = s;
        }
        const double p_top_own = p[base + n1 - 1];
        const double p_bot_own = p[base];
        double ptop = (e < gm.nez - 1) ? 0.5 * (p_top_own + p[(e + 1) * n1]) : p_top_own;
        double pbot = (e > 0) ? 0.5 * (p_bot_own + p[e * n1 - 1]) : p_bot_own;
        if (form == DgForm::strong) {
            ptop -= p_top_own;
            pbot -= p_bot_own;
        }
        out[base + n1 - 1] += ptop;
        out[base] -= pbot;
    }
}

// 1D divergence integral of a vertical flux (centered faces, mirrored walls)
void col_div_int(const ColGeom& gm, DgForm form, const double* f, double* out) {
    const int n1 = gm.n1;
    const auto& w = gm.basis->weights;
    const auto& D = gm.basis->diff;
    for (int e = 0; e < gm.nez; ++e) {
        const int base = e * n1;
        for (int j = 0; j < n1; ++j) {
            double s = 0.0;
            if (form == DgForm::weak) {
                for (int k = 0; k < n1; ++k)
                    s -= w[k] * D[k * n1 + j] * f[base + k];
            } else {
                for (int k = 0; k < n1; ++k)
                    s += w[j] * D[j * n1 + k] * f[base + k];
            }
            out[base + j] = s;
        }
        const double f_top_own = f[base + n1 - 1];
        const double f_bot_own = f[base];
        double ftop = (e < gm.nez - 1) ? 0.5 * (f_top_own + f[(e + 1) * n1]) : 0.0;
        double fbot = (e > 0) ? 0.5 * (f_bot_own + f[e * n1 - 1]) : 0.0;
        if (form == DgForm::strong) {
            ftop -= f_top_own;
            fbot -= f_bot_own;
        }
        out[base + n1 - 1] += ftop;
        out[base] -= fbot;
    }
}

// jump-penalty integral: out += sign convention of the Rusanov dissipation,
// mirrored wall ghost only for the vertical-momentum field
void col_jump_int(const ColGeom& gm, const double* lam_face, const double* q, bool mirror_wall,
                  double* out) {
    const int n1 = gm.n1;
    for (int e = 0; e < gm.nez; ++e) {
        const int top = e * n1 + n1 - 1;
        const int bot = e * n1;
        // top face of element e (faces indexed by element, lam at the face)
        if (e < gm.nez - 1) {
            const double dq = q[(e + 1) * n1] - q[top];
            out[top] += -0.5 * lam_face[e + 1] * dq;
        } else if (mirror_wall) {
            out[top] += -0.5 * lam_face[gm.nez] * (-2.0 * q[top]);
        }
        if (e > 0) {
            const double dq = q[e * n1 - 1] - q[bot];
            out[bot] += -0.5 * lam_face[e] * dq;
        } else if (mirror_wall) {
            out[bot] += -0.5 * lam_face[0] * (-2.0 * q[bot]);
        }
    }
}

} // namespace

void column_apply(const ImplicitContext& ctx, double alpha, ImexForm form, int column,
                  const std::vector<double>& x, std::vector<double>& y) {
    const Mesh& m = *ctx.mesh;
    const ReferenceState& ref = *ctx.ref;
    const ColGeom gm = col_geom(m);
    const int ncol = gm.ncol, n1 = gm.n1;
    const double gam = ref.consts.gamma();
    const double g = ref.consts.g;
    const bool two_c = is2c(ctx);

    // reference fields along this column
    std::vector<double> h(ncol), gv(ncol), dh(ncol), eos_t(ncol), eos_r(ncol), phi(ncol),
        a0f(gm.nez + 1);
    for (int k = 0; k < ncol; ++k) {
        const int id = m.column_node(column, k);
        h[k] = ref.h[id];
        gv[k] = ref.gvert[id];
        dh[k] = ref.dhdz[id];
        eos_t[k] = ref.eos_t[id];
        eos_r[k] = ref.eos_r[id];
        phi[k] = ref.phi[id];
    }
    // face wave speed: the own-side a0 trace of the element below the face
    for (int e = 0; e <= gm.nez; ++e) {
        const int k = (e < gm.nez) ? e * n1 : ncol - 1;
        a0f[e] = ref.a0[m.column_node(column, k)];
    }

    if (form == ImexForm::schur) {
        std::vector<double> gz(ncol), yz(ncol), fz(ncol), d1(ncol), d2(ncol);
        col_grad_int(gm, ctx.form, x.data(), gz.data());
        for (int k = 0; k < ncol; ++k) {
            gz[k] /= gm.mass1(k);
            const double avert = two_c ? gv[k] / eos_t[k] : gv[k] / (gam - 1.0);
            yz[k] = (gz[k] + avert * x[k]) / (1.0 + alpha * alpha * gv[k] * dh[k]);
            fz[k] = h[k] * yz[k];
        }
        col_div_int(gm, ctx.form, fz.data(), d1.data());
        y.resize(ncol);
        if (two_c) {
            for (int k = 0; k < ncol; ++k)
                y[k] = x[k] - alpha * alpha * eos_t[k] * d1[k] / gm.mass1(k);
        } else {
            col_div_int(gm, ctx.form, yz.data(), d2.data());
            for (int k = 0; k < ncol; ++k)
                y[k] = x[k] - alpha * alpha * (gam - 1.0) *
                                  (d1[k] - phi[k] * d2[k]) / gm.mass1(k);
        }
        return;
    }

    // no-schur: packed (rho, ux, uz, thermo) per node
    y.assign(4 * (size_t)ncol, 0.0);
    std::vector<double> fld(ncol), intg(ncol), pl(ncol), huz(ncol), uzv(ncol);
    std::vector<double> lam(gm.nez + 1, 0.0);
    if (!is_centered_implicit(ctx.flux))
        for (int e = 0; e <= gm.nez; ++e)
            lam[e] = a0f[e];

    for (int k = 0; k < ncol; ++k) {
        pl[k] = eos_t[k] * x[4 * k + 3] + eos_r[k] * x[4 * k + 0];
        uzv[k] = x[4 * k + 2];
        huz[k] = h[k] * uzv[k];
    }
    auto accumulate = [&](int fieldidx, const double* divflux, bool grad_of_pl,
                          bool mirror_wall) {
        std::fill(intg.begin(), intg.end(), 0.0);
        if (divflux)
            col_div_int(gm, ctx.form, divflux, intg.data());
        if (grad_of_pl) {
            std::vector<double> gtmp(ncol, 0.0);
            col_grad_int(gm, ctx.form, pl.data(), gtmp.data());
            for (int k = 0; k < ncol; ++k)
                intg[k] += gtmp[k];
        }
        for (int k = 0; k < ncol; ++k)
            fld[k] = x[4 * k + fieldidx];
        col_jump_int(gm, lam.data(), fld.data(), mirror_wall, intg.data());
        // L contribution is -M^{-1} intg (+ buoyancy handled by caller)
        for (int k = 0; k < ncol; ++k)
            y[4 * k + fieldidx] =
                x[4 * k + fieldidx] - alpha * (-intg[k] / gm.mass1(k));
    };
    accumulate(0, uzv.data(), false, false);  // mass: div(Uz)
    accumulate(1, nullptr, false, false);     // x-momentum: jump only
    accumulate(2, nullptr, true, true);       // z-momentum: grad(P_L) + jump
    accumulate(3, huz.data(), false, false);  // thermo: div(h Uz)
    // buoyancy: L_uz += -rho*g  =>  y_uz -= alpha*(-(-rho g)) ... y = x - alpha L
    for (int k = 0; k < ncol; ++k)
        y[4 * k + 2] += alpha * g * x[4 * k + 0];
}

ColumnSystems build_column_systems(const ImplicitContext& ctx, double alpha, ImexForm form) {
    const Mesh& m = *ctx.mesh;
    const ColGeom gm = col_geom(m);
    ColumnSystems cs;
    cs.mesh_ = &m;
    cs.form_ = form;
    cs.alpha_ = alpha;
    cs.ncol_ = gm.ncol;
    cs.nfields_ = (form == ImexForm::schur) ? 1 : 4;
    const int nsys = cs.nfields_ * gm.ncol;
    const int ncols_total = m.num_columns();
    cs.mats_.resize(ncols_total);

    if (form == ImexForm::schur) {
        cs.lam_half_.resize(gm.ncol);
        for (int k = 0; k < gm.ncol; ++k) {
            const int id = m.column_node(0, k);
            cs.lam_half_[k] =
                std::sqrt(gm.mass1(k) * ctx.ref->w_sym[id] / ctx.ref->eos_t[id]);
        }
    }

#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < ncols_total; ++c) {
        std::vector<double> dense((size_t)nsys * nsys, 0.0);
        std::vector<double> e(nsys, 0.0), col(nsys);
        for (int j = 0; j < nsys; ++j) {
            e[j] = 1.0;
            column_apply(ctx, alpha, form, c, e, col);
            e[j] = 0.0;
            if (form == ImexForm::schur)
                // similarity transform with Lambda^{1/2}
                for (int i = 0; i < nsys; ++i)
                    dense[(size_t)i * nsys + j] =
                        col[i] * cs.lam_half_[i] / cs.lam_half_[j];
            else
                for (int i = 0; i < nsys; ++i)
                    dense[(size_t)i * nsys + j] = col[i];
        }
        int bw = 0;
        for (int i = 0; i < nsys; ++i)
            for (int j = 0; j < nsys; ++j)
                if (dense[(size_t)i * nsys + j] != 0.0)
                    bw = std::max(bw, std::abs(i - j));
        BandedMatrix bm(nsys, bw, bw);
        for (int i = 0; i < nsys; ++i)
            for (int j = std::max(0, i - bw); j <= std::min(nsys - 1, i + bw); ++j)
                bm.at(i, j) = dense[(size_t)i * nsys + j];
        bm.factor();
        cs.mats_[c] = std::move(bm);
    }
    cs.kl_ = cs.mats_.empty() ? 0 : cs.mats_[0].lower();
    return cs;
}

void ColumnSystems::solve_no_schur(const std::vector<double>& qhat,
                                   std::vector<double>& q_tt) const {
    const Mesh& m = *mesh_;
    const int n = m.num_nodes;
    q_tt.resize(4 * (size_t)n);
    const int ncols = m.num_columns();
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < ncols; ++c) {
        std::vector<double> packed(4 * (size_t)ncol_);
        for (int k = 0; k < ncol_; ++k) {
            const int id = m.column_node(c, k);
            packed[4 * k + 0] = qhat[id];
            packed[4 * k + 1] = qhat[n + id];
            packed[4 * k + 2] = qhat[2 * n + id];
            packed[4 * k + 3] = qhat[3 * n + id];
        }
        mats_[c].solve(packed);
        for (int k = 0; k < ncol_; ++k) {
            const int id = m.column_node(c, k);
            q_tt[id] = packed[4 * k + 0];
            q_tt[n + id] = packed[4 * k + 1];
            q_tt[2 * n + id] = packed[4 * k + 2];
            q_tt[3 * n + id] = packed[4 * k + 3];
        }
    }
}

void ColumnSystems::solve_schur(const std::vector<double>& rhs, std::vector<double>& p) const {
    const Mesh& m = *mesh_;
    p.resize(m.num_nodes);
    const int ncols = m.num_columns();
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < ncols; ++c) {
        std::vector<double> packed(ncol_);
        for (int k = 0; k < ncol_; ++k)
            packed[k] = rhs[m.column_node(c, k)] * lam_half_[k];
        mats_[c].solve(packed);
        for (int k = 0; k < ncol_; ++k)
            p[m.column_node(c, k)] = packed[k] / lam_half_[k];
    }
}

} // namespace dgimex
