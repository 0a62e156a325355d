#pragma once

// FAS multigrid: recursive V-cycle and residual-controlled outer loop.
//
// One cycle on level l (coarsest level L = meshLevel):
//   s smoothing steps;  if l == L stop here
//   r = f - L(p);  p0 = R p;  p0_init = p0;  f0 = R r;  f0 += L0(p0)
//   cycle on level l+1 with (p0, f0)
//   c0 = p0 - p0_init;  p += P(c0);  s smoothing steps
// The outer loop runs cycles until h^{d/2}||f - L p|| <= tol or kMax cycles.

#include "mgfas/grid.hpp"
#include "mgfas/smoother.hpp"
#include "mgfas/stencil.hpp"

#include <vector>

namespace mgfas {

struct FasParams {
    double tol = 1e-9;
    int kmax = 20;
    int s = 2;
    int mesh_level = 1;

    /// Throws InvalidParams for non-positive entries.
    void validate() const;
    /// log2(n) - 1, the depth that coarsens an n-cell axis down to 2 cells.
    static int full_depth(int n);
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
};

/// Solver bound to one grid, location, operator and boundary condition.
/// Workspace for every level is allocated once at construction.
class FasSolver {
public:
    FasSolver(const GridLevel& fine, Location loc, const OperatorCoeffs& coeffs, const BoundaryCondition& bc,
              const FasParams& params, const SweepPlan& plan, int ghost = 1);
    FasSolver(const GridLevel& fine, Location loc, const OperatorCoeffs& coeffs, const BoundaryCondition& bc,
              const FasParams& params);

    /// Runs cycles from the initial guess in p. For a=0 with no Dirichlet face
    /// the right-hand side is projected to zero mean first and the solution is
    /// returned with zero mean.
    SolveReport solve(Field& p, const Field& f);

    /// A single cycle on the finest level (no nullspace handling, no residual check).
    void vcycle(Field& p, const Field& f);

    /// h^{d/2} ||f - L p|| on the finest level.
    double residual_norm(Field& p, const Field& f);

    const GridHierarchy& hierarchy() const { return levels_; }
    const OperatorCoeffs& coeffs() const { return coeffs_; }
    const FasParams& params() const { return params_; }
    const BoundaryCondition& bc() const { return bc_; }
    bool singular() const;

private:
    struct Work {
        Field r;       // residual on this level
        Field p;       // solution on this level (levels >= 1)
        Field f;       // right-hand side on this level (levels >= 1)
        Field p_init;  // restricted solution, later the correction (levels >= 1)
    };

    void cycle(int level, Field& p, const Field& f);
    void smooth_s(Field& p, const Field& f);

    GridHierarchy levels_;
    Location loc_;
    OperatorCoeffs coeffs_;
    BoundaryCondition bc_;
    BoundaryCondition bc0_;
    FasParams params_;
    SweepPlan plan_;
    std::vector<Work> work_;
    Field fshift_;
};

} // namespace mgfas
