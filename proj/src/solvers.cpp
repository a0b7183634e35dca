#include "dgimex/solvers.hpp"

#include <chrono>
#include <cmath>
#include <lapacke.h>

#include "dgimex/field.hpp"

namespace dgimex {

namespace {
double now_seconds() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}
} // namespace

SolveReport gmres(const ApplyFn& op, const std::vector<double>& rhs, std::vector<double>& x,
                  double tol_rel, int restart, int max_iter) {
    const double t0 = now_seconds();
    const size_t n = rhs.size();
    SolveReport rep;
    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        rep.converged = true;
        rep.wall_seconds = now_seconds() - t0;
        return rep;
    }
    const int m = std::max(1, restart);
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<double> h((m + 1) * m, 0.0);
    std::vector<double> cs(m), sn(m), g(m + 1);
    std::vector<double> w(n);

    int total_iters = 0;
    double res = 0.0;
    while (true) {
        op(x, w);
        for (size_t i = 0; i < n; ++i)
            v[0][i] = rhs[i] - w[i];
        double beta = norm2(v[0]);
        res = beta / bnorm;
        if (res <= tol_rel || total_iters >= max_iter) {
            rep.converged = res <= tol_rel;
            break;
        }
        for (size_t i = 0; i < n; ++i)
            v[0][i] /= beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;
        int k = 0;
        for (; k < m && total_iters < max_iter; ++k, ++total_iters) {
            op(v[k], w);
            // modified Gram-Schmidt
            for (int j = 0; j <= k; ++j) {
                const double hjk = dot(v[j], w);
                h[j * m + k] = hjk;
                for (size_t i = 0; i < n; ++i)
                    w[i] -= hjk * v[j][i];
            }
            const double hk1 = norm2(w);
            h[(k + 1) * m + k] = hk1;
            if (hk1 > 0.0)
                for (size_t i = 0; i < n; ++i)
                    v[k + 1][i] = w[i] / hk1;
            // apply accumulated Givens rotations, then form the new one
            for (int j = 0; j < k; ++j) {
                const double t1 = cs[j] * h[j * m + k] + sn[j] * h[(j + 1) * m + k];
                const double t2 = -sn[j] * h[j * m + k] + cs[j] * h[(j + 1) * m + k];
                h[j * m + k] = t1;
                h[(j + 1) * m + k] = t2;
            }
            const double denom = std::hypot(h[k * m + k], h[(k + 1) * m + k]);
            cs[k] = (denom == 0.0) ? 1.0 : h[k * m + k] / denom;
            sn[k] = (denom == 0.0) ? 0.0 : h[(k + 1) * m + k] / denom;
            h[k * m + k] = denom;
            h[(k + 1) * m + k] = 0.0;
            const double g1 = cs[k] * g[k];
            g[k + 1] = -sn[k] * g[k];
            g[k] = g1;
            res = std::abs(g[k + 1]) / bnorm;
            if (res <= tol_rel) {
                ++k;
                ++total_iters;
                break;
            }
        }
        // back-substitute the k x k triangular system and update x
        std::vector<double> y(k, 0.0);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j)
                s -= h[i * m + j] * y[j];
            y[i] = s / h[i * m + i];
        }
        for (int j = 0; j < k; ++j)
            for (size_t i = 0; i < n; ++i)
                x[i] += y[j] * v[j][i];
        if (res <= tol_rel) {
            rep.converged = true;
            break;
        }
        if (total_iters >= max_iter) {
            rep.converged = false;
            break;
        }
    }
    rep.iterations = total_iters;
    rep.rel_residual = res;
    rep.wall_seconds = now_seconds() - t0;
    return rep;
}

SolveReport conjugate_gradient(const ApplyFn& op, const std::vector<double>& rhs,
                               std::vector<double>& x, double tol_rel, int max_iter) {
    const double t0 = now_seconds();
    const size_t n = rhs.size();
    SolveReport rep;
    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        rep.converged = true;
        rep.wall_seconds = now_seconds() - t0;
        return rep;
    }
    std::vector<double> r(n), p(n), ap(n);
    op(x, ap);
    for (size_t i = 0; i < n; ++i)
        r[i] = rhs[i] - ap[i];
    p = r;
    double rr = dot(r, r);
    rep.rel_residual = std::sqrt(rr) / bnorm;
    int it = 0;
    while (rep.rel_residual > tol_rel && it < max_iter) {
        op(p, ap);
        const double pap = dot(p, ap);
        if (pap <= 0.0)
            throw SolverBreakdown("conjugate_gradient: non-positive curvature (operator not SPD)");
        const double alpha = rr / pap;
        for (size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (size_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * p[i];
        ++it;
        rep.rel_residual = std::sqrt(rr) / bnorm;
    }
    rep.iterations = it;
    rep.converged = rep.rel_residual <= tol_rel;
    rep.wall_seconds = now_seconds() - t0;
    return rep;
}

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
    ab_.assign((size_t)ldab_ * n_, 0.0);
    ipiv_.assign(n_, 0);
}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
        throw std::out_of_range("BandedMatrix::at outside band");
    return ab_[(size_t)j * ldab_ + (kl_ + ku_ + i - j)];
}

double BandedMatrix::get(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
        return 0.0;
    return ab_[(size_t)j * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::factor() {
    const int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_,
                                    ipiv_.data());
    if (info != 0)
        throw SolverBreakdown("banded factorization failed (singular pivot)");
    factored_ = true;
}

void BandedMatrix::solve(double* b) const {
    if (!factored_)
        throw SolverBreakdown("banded solve before factorization");
    const int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab_,
                                    ipiv_.data(), b, n_);
    if (info != 0)
        throw SolverBreakdown("banded solve failed");
}

void BandedMatrix::solve(std::vector<double>& b) const { solve(b.data()); }

} // namespace dgimex
