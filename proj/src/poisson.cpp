#include "mgfas/poisson.hpp"

#include "mgfas/rng.hpp"

#include <cmath>
#include <numbers>

namespace mgfas {

namespace {

constexpr double pi = std::numbers::pi;

double g(double x) { return std::sin(pi * std::sin(pi * x)); }

double g2(double x) {
    const double s = std::sin(pi * x), c = std::cos(pi * x);
    return -pi * pi * pi * s * std::cos(pi * s) - pi * pi * pi * pi * c * c * std::sin(pi * s);
}

} // namespace

double benchmark_exact(const std::array<double, 3>& x, int dim) {
    double v = g(x[0]) * g(x[1]);
    if (dim == 3) v *= g(x[2]);
    return v;
}

double benchmark_rhs(const std::array<double, 3>& x, int dim) {
    const double gx = g(x[0]), gy = g(x[1]);
    if (dim == 2) return gx * gy - (g2(x[0]) * gy + gx * g2(x[1]));
    const double gz = g(x[2]);
    return gx * gy * gz - (g2(x[0]) * gy * gz + gx * g2(x[1]) * gz + gx * gy * g2(x[2]));
}

Field sample(const GridLevel& grid, Location loc, const std::function<double(const std::array<double, 3>&)>& fn,
             int ghost) {
    Field f(grid, loc, ghost);
    for (int k = f.active_begin(2); k < f.active_end(2); ++k)
        for (int j = f.active_begin(1); j < f.active_end(1); ++j)
            for (int i = f.active_begin(0); i < f.active_end(0); ++i)
                f(i, j, k) = fn({f.coord(0, i), f.coord(1, j), grid.dim == 3 ? f.coord(2, k) : 0.0});
    f.mark_stale();
    return f;
}

BoundaryCondition benchmark_bc() { return BoundaryCondition::dirichlet(0.0); }

FasParams benchmark_params(int n) {
    FasParams p;
    p.tol = 1e-9;
    p.kmax = 20;
    p.s = 2;
    p.mesh_level = FasParams::full_depth(n);
    return p;
}

std::vector<AsymptoticRow> asymptotic_test(int dim, const std::vector<int>& sizes, const FasParams& base,
                                           const SweepPlan& plan) {
    std::vector<AsymptoticRow> rows;
    for (int n : sizes) {
        const GridLevel grid = GridLevel::unit(dim, n);
        FasParams params = base;
        params.mesh_level = FasParams::full_depth(n);
        const auto exact = [dim](const std::array<double, 3>& x) { return benchmark_exact(x, dim); };
        const auto rhs = [dim](const std::array<double, 3>& x) { return benchmark_rhs(x, dim); };
        const Field f = sample(grid, Location::Cell, rhs);
        const Field pe = sample(grid, Location::Cell, exact);
        Field p(grid, Location::Cell);
        FasSolver solver(grid, Location::Cell, OperatorCoeffs{1.0, 1.0}, benchmark_bc(), params, plan);
        const SolveReport rep = solver.solve(p, f);

        Field diff(grid, Location::Cell);
        for (std::size_t q = 0; q < diff.size(); ++q) diff.data()[q] = p.data()[q] - pe.data()[q];
        AsymptoticRow row;
        row.n = n;
        row.error = norm_l2_scaled(diff);
        row.order = rows.empty() ? 0.0 : std::log2(rows.back().error / row.error);
        row.iterations = rep.iterations;
        row.residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
        row.converged = rep.converged;
        rows.push_back(row);
    }
    return rows;
}

AlgebraicRun algebraic_test(int dim, int n, const FasParams& base, const SweepPlan& plan, std::uint64_t seed,
                            bool full_depth) {
    const GridLevel grid = GridLevel::unit(dim, n);
    FasParams params = base;
    if (full_depth) params.mesh_level = FasParams::full_depth(n);
    const OperatorCoeffs coeffs{1.0, 1.0};
    const BoundaryCondition bc = benchmark_bc();

    Field pe = sample(grid, Location::Cell, [dim](const std::array<double, 3>& x) { return benchmark_exact(x, dim); });
    apply_ghosts(pe, bc);
    const Field f = apply_operator(pe, coeffs);
    Field p(grid, Location::Cell);
    fill_random(p, seed);

    FasSolver solver(grid, Location::Cell, coeffs, bc, params, plan);
    AlgebraicRun run;
    run.n = n;
    Field diff(grid, Location::Cell);
    apply_ghosts(p, bc);
    for (int k = 1; k <= params.kmax; ++k) {
        solver.vcycle(p, f);
        const double res = solver.residual_norm(p, f);
        for (std::size_t q = 0; q < diff.size(); ++q) diff.data()[q] = p.data()[q] - pe.data()[q];
        run.errors.push_back(norm_l2_scaled(diff));
        run.report.iterations = k;
        run.report.residual_history.push_back(res);
        if (!std::isfinite(res)) break;
        if (res <= params.tol) {
            run.report.converged = true;
            break;
        }
    }
    return run;
}

std::vector<OrderingRow> compare_orderings(int dim, int n, const FasParams& base, std::uint64_t seed) {
    std::vector<OrderingRow> rows;
    for (SweepShape shape : {SweepShape::X, SweepShape::U, SweepShape::Z})
        for (SweepSequence seq : {SweepSequence::ForwardForward, SweepSequence::ForwardBackward}) {
            const SweepPlan plan = SweepPlan::make(shape, seq, dim);
            const AlgebraicRun run = algebraic_test(dim, n, base, plan, seed, false);
            OrderingRow row;
            row.shape = shape;
            row.sequence = seq;
            row.iterations = run.report.iterations;
            row.final_residual = run.report.residual_history.empty() ? 0.0 : run.report.residual_history.back();
            row.converged = run.report.converged;
            rows.push_back(row);
        }
    return rows;
}

} // namespace mgfas
