// Serial reference kernels against the OpenMP kernels on one grid.

#include "mgfas/fas.hpp"
#include "mgfas/parallel.hpp"
#include "mgfas/poisson.hpp"
#include "mgfas/rng.hpp"
#include "mgfas/serial.hpp"
#include "mgfas/transfer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

using namespace mgfas;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    fn();
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel timings"};
    int dim = 2, n = 1024, threads = 0, repeats = 10;
    app.add_option("--dim", dim, "2 or 3");
    app.add_option("--size", n, "cells per axis");
    app.add_option("--threads", threads, "OpenMP threads (0: default)");
    app.add_option("--repeats", repeats, "timed repetitions, best kept");
    CLI11_PARSE(app, argc, argv);
    set_thread_count(threads);

    const GridLevel g = GridLevel::unit(dim, n);
    const BoundaryCondition bc = benchmark_bc();
    const OperatorCoeffs c{1.0, 1.0};
    const FasParams prm = benchmark_params(n);
    const SweepPlan plan = default_plan(dim);
    const Field f = sample(g, Location::Cell, [dim](const std::array<double, 3>& x) { return benchmark_rhs(x, dim); });
    Field p(g, Location::Cell), out(g, Location::Cell);
    fill_random(p, 42);
    apply_ghosts(p, bc);
    const GridLevel gc = g.coarsened();
    Field coarse(gc, Location::Cell), correction(gc, Location::Cell);
    fill_random(correction, 7, -1e-3, 1e-3);
    apply_ghosts(correction, bc.homogeneous());
    FasSolver solver(g, Location::Cell, c, bc, prm, plan);
    const GridHierarchy levels = make_hierarchy(g, prm.mesh_level);

    struct Row {
        const char* name;
        std::function<void()> serial, parallel;
    };
    const std::vector<Row> rows{
        {"operator", [&] { serial::apply_operator_into(p, c, out); }, [&] { apply_operator_into(p, c, out); }},
        {"residual", [&] { serial::residual_into(f, p, c, out); }, [&] { residual_into(f, p, c, out); }},
        {"smooth", [&] { serial::smooth(f, p, c, plan, bc); }, [&] { smooth(f, p, c, plan, bc); }},
        {"restrict", [&] { serial::restrict_into(p, coarse); }, [&] { restrict_into(p, coarse); }},
        {"prolong", [&] { serial::prolong_add(correction, p); }, [&] { prolong_add(correction, p); }},
        {"vcycle", [&] { serial::vcycle(levels, p, f, c, bc, prm, plan); }, [&] { solver.vcycle(p, f); }},
    };
    std::printf("# dim=%d n=%d threads=%d repeats=%d\n", dim, n, thread_count(), repeats);
    std::printf("kernel,serial_seconds,parallel_seconds,speedup\n");
    for (const Row& r : rows) {
        const double s = best_of(repeats, r.serial);
        const double q = best_of(repeats, r.parallel);
        std::printf("%s,%.6g,%.6g,%.3g\n", r.name, s, q, s / q);
    }
}
