#include "dgimex/swe_demo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dgimex/lgl.hpp"

namespace dgimex {

SweReport swe_schur_feasibility(int elements, int order, double dt, double lambda,
                                unsigned seed) {
    if (elements < 1)
        throw std::invalid_argument("swe_schur_feasibility: need at least one element");
    const LglBasis basis = lgl_basis(order);
    const int n1 = order + 1;
    const int n = elements * n1;
    const double jac = 1.0 / elements; // element width on [0,1], metric dz/2 = jac/2

    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;

    Mat M = Mat::Zero(n, n);
    Mat Dw = Mat::Zero(n, n); // weak-form differentiation matrix
    Mat C = Mat::Zero(n, n);  // centered flux matrix
    Mat J = Mat::Zero(n, n);  // jump (dissipation) matrix
    for (int e = 0; e < elements; ++e) {
        const int base = e * n1;
        for (int j = 0; j < n1; ++j) {
            M(base + j, base + j) = basis.weights[j] * 0.5 * jac;
            for (int k = 0; k < n1; ++k)
                Dw(base + j, base + k) += basis.weights[k] * basis.d(k, j);
        }
        const int top = base + n1 - 1, bot = base;
        const int nb_top = (e + 1 < elements) ? (e + 1) * n1 : 0;
        const int nb_bot = (e > 0) ? e * n1 - 1 : n - 1;
        // centered average with outward normal; jump dissipation -(lam/2)[[q]]
        C(top, top) += 0.5;
        C(top, nb_top) += 0.5;
        C(bot, bot) -= 0.5;
        C(bot, nb_bot) -= 0.5;
        J(top, top) += 0.5 * lambda;
        J(top, nb_top) -= 0.5 * lambda;
        J(bot, bot) += 0.5 * lambda;
        J(bot, nb_bot) -= 0.5 * lambda;
    }

    const Mat Dhat = C - Dw;             // divergence/gradient integral matrix
    const Mat Mhat = M + J * dt;         // augmented mass matrix
    SweReport rep;
    rep.n = n;
    rep.dt = dt;
    rep.lambda = lambda;
    rep.max_jump_entry = J.cwiseAbs().maxCoeff();

    double offblock = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i / n1 != j / n1)
                offblock = std::max(offblock, std::abs(Mhat(i, j)));
    rep.max_offblock_mhat = offblock;
    rep.mhat_block_diagonal = offblock == 0.0;

    // monolithic backward Euler: [Mhat, dt Dhat^T; dt Dhat, Mhat] (phi;U) = (M phi0; M U0)
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Vec phi0(n), u0(n);
    for (int i = 0; i < n; ++i) {
        phi0(i) = dist(rng);
        u0(i) = dist(rng);
    }
    // the discrete divergence and gradient integral matrices coincide on a
    // periodic mesh with centered fluxes (both equal Dhat)
    Mat big = Mat::Zero(2 * n, 2 * n);
    big.topLeftCorner(n, n) = Mhat;
    big.topRightCorner(n, n) = dt * Dhat;
    big.bottomLeftCorner(n, n) = dt * Dhat;
    big.bottomRightCorner(n, n) = Mhat;
    Vec rhs(2 * n);
    rhs.head(n) = M * phi0;
    rhs.tail(n) = M * u0;
    const Vec mono = big.partialPivLu().solve(rhs);

    // block elimination: (Mhat - dt^2 Dhat Mhat^{-1} Dhat) phi = R_phi - dt Dhat Mhat^{-1} R_U
    const Mat mhat_inv = Mhat.partialPivLu().inverse();
    const Mat schur = Mhat - dt * dt * Dhat * mhat_inv * Dhat;
    const Vec rp = rhs.head(n) - dt * Dhat * (mhat_inv * rhs.tail(n));
    const Vec phi_s = schur.partialPivLu().solve(rp);
    const Vec u_s = mhat_inv * (rhs.tail(n) - dt * Dhat * phi_s);

    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(phi_s(i) - mono(i)));
        diff = std::max(diff, std::abs(u_s(i) - mono(n + i)));
    }
    rep.schur_vs_monolithic = diff;
    return rep;
}

} // namespace dgimex
