#include "mgfas/fas.hpp"

#include "mgfas/errors.hpp"
#include "mgfas/transfer.hpp"

#include <cmath>

namespace mgfas {

void FasParams::validate() const {
    if (!(tol > 0.0)) throw InvalidParams("tol must be positive");
    if (kmax < 1) throw InvalidParams("kMax must be at least 1");
    if (s < 1) throw InvalidParams("s must be at least 1");
    if (mesh_level < 1) throw InvalidParams("meshLevel must be at least 1");
}

int FasParams::full_depth(int n) {
    int d = 0;
    while (n > 2 && n % 2 == 0) {
        n /= 2;
        ++d;
    }
    return d < 1 ? 1 : d;
}

FasSolver::FasSolver(const GridLevel& fine, Location loc, const OperatorCoeffs& coeffs, const BoundaryCondition& bc,
                     const FasParams& params)
    : FasSolver(fine, loc, coeffs, bc, params, default_plan(fine.dim)) {}

FasSolver::FasSolver(const GridLevel& fine, Location loc, const OperatorCoeffs& coeffs, const BoundaryCondition& bc,
                     const FasParams& params, const SweepPlan& plan, int ghost)
    : loc_(loc), coeffs_(coeffs), bc_(bc), bc0_(bc.homogeneous()), params_(params), plan_(plan) {
    params_.validate();
    coeffs_.validate();
    bc_.validate(fine);
    if (plan_.dim != fine.dim)
        throw PlanDimMismatch("sweep plan for " + std::to_string(plan_.dim) + "D given to a " +
                              std::to_string(fine.dim) + "D solver");
    if (staggered_axis(loc) >= fine.dim) throw LocationMismatch("edge location beyond grid dimension");
    levels_ = make_hierarchy(fine, params_.mesh_level);
    work_.resize(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        Work& w = work_[l];
        if (l + 1 < levels_.size()) w.r = Field(levels_[l], loc, ghost); // mesh_level >= 1, so level 0 has one
        if (l > 0) {
            w.p = Field(levels_[l], loc, ghost);
            w.f = Field(levels_[l], loc, ghost);
            w.p_init = Field(levels_[l], loc, ghost);
        }
    }
    if (singular()) fshift_ = Field(fine, loc, ghost);
}

bool FasSolver::singular() const { return coeffs_.a == 0.0 && !bc_.any_dirichlet(levels_.front().dim); }

void FasSolver::smooth_s(Field& p, const Field& f) {
    for (int m = 0; m < params_.s; ++m) smooth(f, p, coeffs_, plan_, bc_);
}

void FasSolver::cycle(int level, Field& p, const Field& f) {
    smooth_s(p, f);
    if (level + 1 == static_cast<int>(levels_.size())) return;

    Work& w = work_[static_cast<std::size_t>(level)];
    Work& c = work_[static_cast<std::size_t>(level) + 1];
    residual_into(f, p, coeffs_, w.r);
    wrap_periodic(w.r);
    restrict_into(p, c.p);
    apply_ghosts(c.p, bc_);
    copy_values(c.p, c.p_init);
    restrict_into(w.r, c.f);
    add_operator(c.p, coeffs_, c.f);

    cycle(level + 1, c.p, c.f);

    // correction c0 = p0 - p0_init, stored over p0_init
    {
        double* cd = c.p_init.data();
        const double* pd = c.p.data();
        const std::size_t n = c.p.size();
#pragma omp parallel for schedule(static)
        for (std::size_t q = 0; q < n; ++q) cd[q] = pd[q] - cd[q];
    }
    apply_ghosts(c.p_init, bc0_);
    prolong_add(c.p_init, p);
    apply_ghosts(p, bc_);
    smooth_s(p, f);
}

void FasSolver::vcycle(Field& p, const Field& f) {
    if (!p.same_layout(f)) throw LocationMismatch("FasSolver: p and f differ in layout");
    if (p.grid().cells != levels_.front().cells || p.grid().h != levels_.front().h || p.location() != loc_)
        throw LocationMismatch("FasSolver: field does not match the solver grid");
    if (!p.ghosts_fresh()) apply_ghosts(p, bc_);
    cycle(0, p, f);
}

double FasSolver::residual_norm(Field& p, const Field& f) {
    if (!p.ghosts_fresh()) apply_ghosts(p, bc_);
    Field& r = work_.front().r;
    residual_into(f, p, coeffs_, r);
    return norm_l2_scaled(r);
}

SolveReport FasSolver::solve(Field& p, const Field& f) {
    SolveReport report;
    const Field* rhs = &f;
    if (singular()) {
        copy_values(f, fshift_);
        shift_active(fshift_, -mean_active(fshift_));
        rhs = &fshift_;
    }
    apply_ghosts(p, bc_);
    for (int k = 1; k <= params_.kmax; ++k) {
        vcycle(p, *rhs);
        const double res = residual_norm(p, *rhs);
        report.iterations = k;
        report.residual_history.push_back(res);
        if (!std::isfinite(res)) break;
        if (res <= params_.tol) {
            report.converged = true;
            break;
        }
    }
    if (singular()) {
        shift_active(p, -mean_active(p));
        apply_ghosts(p, bc_);
    }
    return report;
}

} // namespace mgfas
