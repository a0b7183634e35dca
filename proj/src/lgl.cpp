#include "dgimex/lgl.hpp"

#include <cmath>
#include <stdexcept>

namespace dgimex {

void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    if (x == 1.0 || x == -1.0) {
        // P_n'(+-1) = +-1^{n-1} n(n+1)/2
        const double s = (x > 0.0) ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0);
        dp = s * 0.5 * n * (n + 1);
    } else {
        dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
}

LglBasis lgl_basis(int order) {
    if (order < 1)
        throw std::invalid_argument("lgl_basis: order must be >= 1");
    const int n = order + 1;
    LglBasis basis;
    basis.order = order;
    basis.points.resize(n);
    basis.weights.resize(n);
    basis.diff.assign(n * n, 0.0);

    auto& x = basis.points;
    x[0] = -1.0;
    x[order] = 1.0;
    // interior nodes: roots of P_N', Newton from Chebyshev-Gauss-Lobatto guesses
    for (int i = 1; i < order; ++i) {
        double xi = -std::cos(M_PI * i / order);
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(order, xi, p, dp);
            // q = (1-x^2) P_N', q' = -N(N+1) P_N
            const double q = (1.0 - xi * xi) * dp;
            const double dq = -order * (order + 1) * p;
            const double step = q / dq;
            xi -= step;
            if (std::abs(step) < 1e-15)
                break;
        }
        x[i] = xi;
    }

    std::vector<double> pn(n);
    for (int i = 0; i < n; ++i) {
        double p, dp;
        legendre(order, x[i], p, dp);
        pn[i] = p;
        basis.weights[i] = 2.0 / (order * (order + 1) * p * p);
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j)
                basis.diff[i * n + j] = (pn[i] / pn[j]) / (x[i] - x[j]);
        }
    basis.diff[0] = -0.25 * order * (order + 1);
    basis.diff[n * n - 1] = 0.25 * order * (order + 1);
    return basis;
}

} // namespace dgimex
