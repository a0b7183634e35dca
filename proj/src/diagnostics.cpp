#include "dgimex/diagnostics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "dgimex/eqsets.hpp"

namespace dgimex {

namespace {
// Kahan-compensated accumulation in index order
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};
} // namespace

MassEnergy mass_energy(const Mesh& mesh, const ReferenceState& ref, const State& q) {
    const auto& c = ref.consts;
    Kahan m, e;
    for (int i = 0; i < mesh.num_nodes; ++i) {
        const double rho = ref.rho0[i] + q.rho()[i];
        m.add(mesh.mass[i] * rho);
        double etot;
        if (ref.set == EquationSet::set3c) {
            etot = ref.thermo0[i] + q.thermo()[i];
        } else {
            // diagnosed: E = rho cv T + |U|^2/(2 rho) + rho phi with T from the EOS
            const double p = pressure_set2c(ref.thermo0[i] + q.thermo()[i], c);
            const double temp = p / (rho * c.gas_constant());
            etot = rho * c.cv * temp +
                   0.5 * (q.ux()[i] * q.ux()[i] + q.uz()[i] * q.uz()[i]) / rho +
                   rho * ref.phi[i];
        }
        e.add(mesh.mass[i] * etot);
    }
    return {m.sum, e.sum};
}

std::array<double, 4> mae(const State& q, const State& q_ref) {
    if (q.n != q_ref.n)
        throw std::invalid_argument("mae: state shapes differ");
    std::array<double, 4> out{};
    const int n = q.n;
    for (int v = 0; v < 4; ++v) {
        Kahan s;
        for (int i = 0; i < n; ++i)
            s.add(std::abs(q_ref.data[(size_t)v * n + i] - q.data[(size_t)v * n + i]));
        out[v] = s.sum / n;
    }
    return out;
}

std::vector<double> densify(const OperatorHandle& op, int max_n) {
    if (op.n > max_n)
        throw std::invalid_argument("densify: operator too large (" + std::to_string(op.n) +
                                    " > " + std::to_string(max_n) + ")");
    const int n = op.n;
    std::vector<double> dense((size_t)n * n, 0.0);
    std::vector<double> e(n, 0.0), col(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        op.apply(e, col);
        e[j] = 0.0;
        for (int i = 0; i < n; ++i)
            dense[(size_t)i * n + j] = col[i];
    }
    return dense;
}

void write_matrix_market(const std::string& path, int n, const std::vector<double>& dense) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw std::runtime_error("cannot open " + path);
    long nnz = 0;
    for (double v : dense)
        if (v != 0.0)
            ++nnz;
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f, "%d %d %ld\n", n, n, nnz);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = dense[(size_t)i * n + j];
            if (v != 0.0)
                std::fprintf(f, "%d %d %.17g\n", i + 1, j + 1, v);
        }
    std::fclose(f);
}

ConditionReport condition_number(const std::vector<double>& dense, int n, double rel_tol,
                                 unsigned seed) {
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    Eigen::Map<const Mat> bmap(dense.data(), n, n); // column-major view of row-major data
    const Mat b = bmap.transpose();                 // recover row-major intent
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = dist(rng);
    v.normalize();

    ConditionReport rep;
    // power iteration on B^T B
    double sigma = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Vec w = b.transpose() * (b * v);
        const double nw = w.norm();
        if (nw == 0.0)
            break;
        v = w / nw;
        const double snew = std::sqrt(nw);
        ++rep.iterations_max;
        if (it > 2 && std::abs(snew - sigma) <= rel_tol * snew) {
            sigma = snew;
            break;
        }
        sigma = snew;
    }
    rep.sigma_max = sigma;

    // inverse power iteration through LU of B and B^T
    Eigen::PartialPivLU<Mat> lu(b);
    Eigen::PartialPivLU<Mat> lut(b.transpose());
    for (int i = 0; i < n; ++i)
        v(i) = dist(rng);
    v.normalize();
    double inv_sigma = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Vec w = lut.solve(lu.solve(v)); // (B^T B)^{-1} v
        const double nw = w.norm();
        if (!std::isfinite(nw) || nw > 1e60) {
            inv_sigma = std::numeric_limits<double>::infinity();
            break;
        }
        v = w / nw;
        const double snew = std::sqrt(nw);
        ++rep.iterations_min;
        if (it > 2 && std::abs(snew - inv_sigma) <= rel_tol * snew) {
            inv_sigma = snew;
            break;
        }
        inv_sigma = snew;
    }
    rep.sigma_min = (inv_sigma > 0.0) ? 1.0 / inv_sigma : 0.0;
    if (rep.sigma_min < 1e-30)
        throw std::runtime_error("condition_number: operator numerically singular");
    rep.kappa = rep.sigma_max / rep.sigma_min;
    return rep;
}

SpdReport spd_check(const std::vector<double>& dense, int n) {
    using Mat = Eigen::MatrixXd;
    Eigen::Map<const Mat> bmap(dense.data(), n, n);
    const Mat b = bmap.transpose();
    SpdReport rep;
    const double bn = b.norm();
    rep.rel_asymmetry = (bn > 0.0) ? (b - b.transpose()).norm() / bn : 0.0;
    const Mat sym = 0.5 * (b + b.transpose());
    Eigen::LLT<Mat> llt(sym);
    rep.spd = (llt.info() == Eigen::Success);
    return rep;
}

double max_relative_imag_eigenvalue(const std::vector<double>& dense, int n) {
    using Mat = Eigen::MatrixXd;
    Eigen::Map<const Mat> bmap(dense.data(), n, n);
    const Mat b = bmap.transpose();
    Eigen::EigenSolver<Mat> es(b, false);
    double rho = 0.0, maximag = 0.0;
    for (int i = 0; i < n; ++i) {
        rho = std::max(rho, std::abs(es.eigenvalues()(i)));
        maximag = std::max(maximag, std::abs(es.eigenvalues()(i).imag()));
    }
    return (rho > 0.0) ? maximag / rho : 0.0;
}

struct DiagnosticsCsv::Impl {
    FILE* f = nullptr;
};

DiagnosticsCsv::DiagnosticsCsv(const std::string& path) : impl_(new Impl) {
    impl_->f = std::fopen(path.c_str(), "w");
    if (!impl_->f)
        throw std::runtime_error("cannot open " + path);
    std::fprintf(impl_->f, "t,dt,cn_total,cn_acoustic,cn_advective,dM,dE,min_thermo,"
                           "max_thermo,iters,resid,wall_s\n");
}

DiagnosticsCsv::~DiagnosticsCsv() {
    if (impl_->f)
        std::fclose(impl_->f);
    delete impl_;
}

void DiagnosticsCsv::write_row(double t, double dt, double cn_total, double cn_acoustic,
                               double cn_advective, double dm, double de, double min_thermo,
                               double max_thermo, long iters, double resid, double wall_s) {
    std::fprintf(impl_->f,
                 "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%ld,%.17g,%.6f\n", t,
                 dt, cn_total, cn_acoustic, cn_advective, dm, de, min_thermo, max_thermo,
                 iters, resid, wall_s);
    std::fflush(impl_->f);
}

} // namespace dgimex
