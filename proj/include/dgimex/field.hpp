#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace dgimex {

enum class EquationSet { set2c, set3c };

using Field = std::vector<double>;

/// Prognostic perturbation state: (rho', Ux, Uz, thermo') over mesh nodes,
/// stored as one flat vector [rho | ux | uz | thermo] so linear solvers and
/// time integrators can treat it as a plain vector.
struct State {
    EquationSet set = EquationSet::set3c;
    int n = 0;
    std::vector<double> data;

    State() = default;
    State(EquationSet s, int nodes) : set(s), n(nodes), data(4 * nodes, 0.0) {}

    std::span<double> rho() { return {data.data(), size_t(n)}; }
    std::span<double> ux() { return {data.data() + n, size_t(n)}; }
    std::span<double> uz() { return {data.data() + 2 * n, size_t(n)}; }
    std::span<double> thermo() { return {data.data() + 3 * n, size_t(n)}; }
    std::span<const double> rho() const { return {data.data(), size_t(n)}; }
    std::span<const double> ux() const { return {data.data() + n, size_t(n)}; }
    std::span<const double> uz() const { return {data.data() + 2 * n, size_t(n)}; }
    std::span<const double> thermo() const { return {data.data() + 3 * n, size_t(n)}; }

    size_t size() const { return data.size(); }
};

inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    assert(x.size() == y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < (long)x.size(); ++i)
        y[i] += a * x[i];
}

/// Serial dot product with fixed accumulation order (deterministic results
/// independent of the worker count).
inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size());
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

inline double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

} // namespace dgimex
