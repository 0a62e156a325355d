#pragma once

// The Helmholtz benchmark p - lap p = f on the unit box with p = 0 on
// the boundary, exact solution prod_l sin(pi sin(pi x_l)), and the
// experiments built on it.

#include "mgfas/fas.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace mgfas {

double benchmark_exact(const std::array<double, 3>& x, int dim);
/// p - lap p of the exact solution, evaluated analytically.
double benchmark_rhs(const std::array<double, 3>& x, int dim);

/// Samples fn at the coordinates of every active point of a new field.
Field sample(const GridLevel& grid, Location loc, const std::function<double(const std::array<double, 3>&)>& fn,
             int ghost = 1);

/// The benchmark's boundary condition: reflected zero Dirichlet on every face.
BoundaryCondition benchmark_bc();

/// tol = 1e-9, kMax = 20, s = 2, meshLevel = log2(n) - 1.
FasParams benchmark_params(int n);

struct AsymptoticRow {
    int n = 0;
    double error = 0.0;
    double order = 0.0; // log2(previous error / error); 0 for the first row
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Continuous right-hand side, zero initial guess; error is h^{d/2}||p - p_exact||.
std::vector<AsymptoticRow> asymptotic_test(int dim, const std::vector<int>& sizes, const FasParams& base,
                                           const SweepPlan& plan);

struct AlgebraicRun {
    int n = 0;
    SolveReport report;
    std::vector<double> errors; // per cycle
};

/// f = L_h(p_exact), random initial guess in [0,1) from `seed`.
/// base.mesh_level is replaced by the full depth when `full_depth` is set.
AlgebraicRun algebraic_test(int dim, int n, const FasParams& base, const SweepPlan& plan, std::uint64_t seed,
                            bool full_depth = true);

struct OrderingRow {
    SweepShape shape = SweepShape::X;
    SweepSequence sequence = SweepSequence::ForwardForward;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

/// The six {X,U,Z} x {ff,fb} configurations on the algebraic problem.
std::vector<OrderingRow> compare_orderings(int dim, int n, const FasParams& base, std::uint64_t seed);

} // namespace mgfas
