#pragma once

// Single-threaded reference versions of the grid kernels and of one
// FAS V-cycle. They follow the floating-point evaluation order of the
// parallel kernels, so results agree bitwise.

#include "mgfas/fas.hpp"
#include "mgfas/smoother.hpp"
#include "mgfas/stencil.hpp"

namespace mgfas::serial {

void apply_operator_into(const Field& p, const OperatorCoeffs& coeffs, Field& out);
void residual_into(const Field& f, const Field& p, const OperatorCoeffs& coeffs, Field& r);
void add_operator(const Field& p, const OperatorCoeffs& coeffs, Field& acc);

void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set);
void smooth(const Field& f, Field& p, const OperatorCoeffs& coeffs, const SweepPlan& plan,
            const BoundaryCondition& bc);

void restrict_into(const Field& fine, Field& coarse);
void prolong_add(const Field& coarse, Field& fine);

/// One V-cycle on `levels` (finest first); temporaries are allocated per call.
void vcycle(const GridHierarchy& levels, Field& p, const Field& f, const OperatorCoeffs& coeffs,
            const BoundaryCondition& bc, const FasParams& params, const SweepPlan& plan);

} // namespace mgfas::serial
