// Timing comparison of the OpenMP kernels against the serial reference
// implementations on a representative mesh.
#include <chrono>
#include <cstdio>
#include <omp.h>
#include <random>

#include "dgimex/cases.hpp"
#include "dgimex/dg_ops.hpp"
#include "dgimex/eqsets.hpp"
#include "dgimex/ref/serial_ops.hpp"

using namespace dgimex;

namespace {
double now() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

template <class F> double time_loop(int reps, F&& fn) {
    fn(); // warm up
    const double t0 = now();
    for (int r = 0; r < reps; ++r)
        fn();
    return (now() - t0) / reps;
}
} // namespace

int main(int argc, char** argv) {
    int nex = 30, nez = 30, order = 4, reps = 20, threads = omp_get_max_threads();
    if (argc > 1) nex = nez = std::atoi(argv[1]);
    if (argc > 2) order = std::atoi(argv[2]);
    if (argc > 3) reps = std::atoi(argv[3]);
    if (argc > 4) threads = std::atoi(argv[4]);
    omp_set_num_threads(threads);

    const Mesh mesh = build_box_mesh(nex, nez, 1000.0, 1000.0, order, SideBcs::all_no_flux());
    PhysConstants consts;
    ReferenceState ref;
    State q;
    init_rtb(mesh, consts, EquationSet::set3c, ref, q);

    std::mt19937 rng(42);
    std::normal_distribution<double> dist(0.0, 1e-3);
    Field fx(mesh.num_nodes), fz(mesh.num_nodes), out(mesh.num_nodes), outz(mesh.num_nodes);
    for (int i = 0; i < mesh.num_nodes; ++i) {
        fx[i] = dist(rng);
        fz[i] = dist(rng);
    }

    std::printf("mesh %dx%d order %d (%d nodes), threads %d, reps %d\n", nex, nez, order,
                mesh.num_nodes, threads, reps);

    const double t_ser = time_loop(reps, [&] {
        serial::div_integral(mesh, fx.data(), fz.data(), DgForm::weak, Dir::all,
                             FaceFlux::centered, WallRule::mirror, out.data());
    });
    const double t_omp = time_loop(reps, [&] {
        div_integral(mesh, fx.data(), fz.data(), DgForm::weak, Dir::all, FaceFlux::centered,
                     WallRule::mirror, out.data());
    });
    std::printf("div_integral   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                1e3 * t_ser, 1e3 * t_omp, t_ser / t_omp);

    const double g_ser = time_loop(reps, [&] {
        serial::grad_integral(mesh, fx.data(), DgForm::weak, Dir::all, FaceFlux::centered,
                              WallRule::copy, out.data(), outz.data());
    });
    const double g_omp = time_loop(reps, [&] {
        grad_integral(mesh, fx.data(), DgForm::weak, Dir::all, FaceFlux::centered,
                      WallRule::copy, out.data(), outz.data());
    });
    std::printf("grad_integral  serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                1e3 * g_ser, 1e3 * g_omp, g_ser / g_omp);

    Field nu(mesh.num_nodes, 75.0);
    LdgWork ldg;
    const double l_ser = time_loop(reps, [&] {
        serial::ldg_laplacian_integral(mesh, fx.data(), nu.data(), out.data());
    });
    const double l_omp = time_loop(reps, [&] {
        ldg_laplacian_integral(mesh, fx.data(), nu.data(), ldg, out.data());
    });
    std::printf("ldg_laplacian  serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                1e3 * l_ser, 1e3 * l_omp, l_ser / l_omp);

    TendencyWork tw;
    State tend(q.set, mesh.num_nodes);
    const double s_omp = time_loop(reps, [&] {
        spatial_tendency(mesh, ref, q, FluxConfig::AT, DgForm::weak, tw, tend);
    });
    const double lt_omp = time_loop(reps, [&] {
        linear_tendency(mesh, ref, q, FluxConfig::AT, DgForm::weak, Dir::all, tw, tend);
    });
    std::printf("spatial_tendency  %8.3f ms ; linear_tendency %8.3f ms (omp)\n", 1e3 * s_omp,
                1e3 * lt_omp);
    return 0;
}
