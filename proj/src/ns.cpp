#include "mgfas/ns.hpp"

#include "loops.hpp"
#include "mgfas/errors.hpp"

#include <atomic>
#include <cmath>

namespace mgfas {

namespace {

std::atomic<long long> g_resident{0};

// out = sum of coefficient * field over every stored value
void combine(Field& out, double a, const Field& x, double b, const Field& y) {
    double* o = out.data();
    const double* xd = x.data();
    const double* yd = y.data();
    const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
    for (std::size_t q = 0; q < n; ++q) o[q] = a * xd[q] + b * yd[q];
    if (x.ghosts_fresh() && y.ghosts_fresh())
        out.mark_fresh();
    else
        out.mark_stale();
}

// out = x + (x - y) / 2; equals x exactly when y == x
void extrapolate(Field& out, const Field& x, const Field& y) {
    double* o = out.data();
    const double* xd = x.data();
    const double* yd = y.data();
    const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
    for (std::size_t q = 0; q < n; ++q) o[q] = xd[q] + 0.5 * (xd[q] - yd[q]);
    if (x.ghosts_fresh() && y.ghosts_fresh())
        out.mark_fresh();
    else
        out.mark_stale();
}

} // namespace

long long resident_allocations() { return g_resident.load(); }

void NSParams::validate() const {
    if (!(re > 0.0) || !std::isfinite(re)) throw InvalidParams("Re must be positive and finite");
    if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
    if (dt > t_end) throw InvalidParams("dt must not exceed tEnd");
    if (dim != 2 && dim != 3) throw InvalidParams("dimension must be 2 or 3");
    if (order != 1 && order != 2) throw InvalidParams("scheme order must be 1 or 2");
    fas.validate();
}

std::array<BoundaryCondition, 3> cavity_bc(int dim, double lid_speed) {
    std::array<BoundaryCondition, 3> bc{BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet(),
                                        BoundaryCondition::dirichlet()};
    bc[0].set(dim - 1, 1, {BcKind::DirichletReflected, lid_speed});
    return bc;
}

NsSolver::NsSolver(const GridLevel& grid, const NSParams& params)
    : grid_(grid), params_(params), schedule_(make_schedule(params.mode, params.order, params.dim)) {
    params_.validate();
    if (grid.dim != params_.dim) throw InvalidParams("grid and parameters disagree on the dimension");
    const int dim = params_.dim;
    for (int c = 0; c < dim; ++c) params_.vel_bc[static_cast<std::size_t>(c)].validate(grid);
    params_.p_bc.validate(grid);

    for (const std::string& name : schedule_.slots) {
        const Location loc = slot_location(name);
        slots_.emplace_back(grid, loc, loc == Location::Cell ? 1 : 2);
        ++g_resident;
    }
    const double b = params_.order == 1 ? params_.dt / params_.re : params_.dt / (2.0 * params_.re);
    const SweepPlan plan = default_plan(dim);
    for (int c = 0; c < dim; ++c) {
        momentum_solvers_.push_back(std::make_unique<FasSolver>(grid, edge_location(c), OperatorCoeffs{1.0, b},
                                                                params_.vel_bc[static_cast<std::size_t>(c)],
                                                                params_.fas, plan, 2));
        rhs_[static_cast<std::size_t>(c)] = Field(grid, edge_location(c), 2);
        mix_[static_cast<std::size_t>(c)] = Field(grid, edge_location(c), 2);
    }
    pressure_solver_ = std::make_unique<FasSolver>(grid, Location::Cell, OperatorCoeffs{0.0, params_.dt},
                                                   params_.p_bc, params_.fas, plan, 1);
    div_rhs_ = Field(grid, Location::Cell, 1);
    set_initial_zero();
}

Location NsSolver::slot_location(const std::string& name) const {
    switch (name.front()) {
    case 'U': return Location::EdgeX;
    case 'V': return Location::EdgeY;
    case 'W': return Location::EdgeZ;
    default: return Location::Cell;
    }
}

void NsSolver::set_initial_zero() {
    StaggeredVector u = StaggeredVector::zeros(grid_, 2);
    Field p(grid_, Location::Cell, 1);
    set_initial(u, p);
}

void NsSolver::set_initial(const StaggeredVector& u0, const Field& p0) {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        Field& s = slots_[i];
        const Location loc = s.location();
        if (loc == Location::Cell)
            copy_values(p0, s);
        else
            copy_values(u0[staggered_axis(loc)], s);
    }
    const int pt = schedule_.initial_slot(Quantity{kPressure, true, 0});
    if (pt >= 0) slot(pt).fill(0.0);
    for (Field& s : slots_) {
        const Location loc = s.location();
        apply_ghosts(s, loc == Location::Cell ? params_.p_bc
                                              : params_.vel_bc[static_cast<std::size_t>(staggered_axis(loc))]);
    }
    n_ = 0;
}

const Field& NsSolver::velocity(int c) const { return slot(schedule_.initial_slot(Quantity{c, false, 0})); }

const Field& NsSolver::pressure() const { return slot(schedule_.initial_slot(Quantity{kPressure, false, 0})); }

StaggeredVector NsSolver::velocity() const {
    StaggeredVector v;
    v.dim = params_.dim;
    for (int c = 0; c < params_.dim; ++c) v[c] = velocity(c);
    return v;
}

void NsSolver::momentum_rhs(int comp, const Lookup& lookup, Field& out) {
    const int dim = params_.dim;
    const double dt = params_.dt;
    for (int d = 0; d < dim; ++d) {
        Field& m = mix_[static_cast<std::size_t>(d)];
        const Field& xn = lookup(Quantity{d, false, 0});
        if (params_.order == 1)
            copy_values(xn, m);
        else if (d < comp)
            combine(m, 0.5, xn, 0.5, lookup(Quantity{d, true, 1}));
        else
            extrapolate(m, xn, lookup(Quantity{d, false, -1}));
    }
    StaggeredVector adv;
    adv.dim = dim;
    for (int d = 0; d < dim; ++d) adv[d] = mix_[static_cast<std::size_t>(d)];
    const Field conv = weno3_convect(adv, adv[comp]);

    const Field& xc = lookup(Quantity{comp, false, 0});
    const Field& p = lookup(Quantity{kPressure, false, 0});
    if (!xc.ghosts_fresh() || !p.ghosts_fresh()) throw UnfilledGhosts("momentum_rhs: stale ghosts on inputs");
    const double* x = xc.data();
    const double* cv = conv.data();
    const double* pd = p.data();
    double* o = out.data();
    const std::ptrdiff_t ps = p.stride(comp);
    const std::ptrdiff_t sy = xc.stride(1), sz = xc.stride(2);
    const double inv_h = 1.0 / grid_.h;
    const double inv_h2 = 1.0 / (grid_.h * grid_.h);
    const double half_nu = dt / (2.0 * params_.re);
    const bool second = params_.order == 2;
    const double tf = second ? (n_ + 0.5) * dt : (n_ + 1) * dt;
    const bool forced = static_cast<bool>(params_.forcing);
    const int i0 = out.active_begin(0), i1 = out.active_end(0);
    out.fill(0.0);
    detail::parallel_rows(out, [&](int j, int k) {
        for (int i = i0; i < i1; ++i) {
            const std::ptrdiff_t n = out.index(i, j, k);
            const std::ptrdiff_t pc = p.index(i, j, k);
            const double gp = (pd[pc] - pd[pc - ps]) * inv_h;
            double v = x[n] - dt * cv[n] - dt * gp;
            if (second) {
                double sum = (x[n - 1] + x[n + 1]) + (x[n - sy] + x[n + sy]);
                if (dim == 3) sum += x[n - sz] + x[n + sz];
                v += half_nu * ((sum - 2.0 * dim * x[n]) * inv_h2);
            }
            if (forced)
                v += dt * params_.forcing(comp, {out.coord(0, i), out.coord(1, j), dim == 3 ? out.coord(2, k) : 0.0},
                                          tf);
            o[n] = v;
        }
    });
    out.mark_stale();
}

SolveReport NsSolver::momentum_solve(int comp, const Field& f, Field& x) {
    return momentum_solvers_[static_cast<std::size_t>(comp)]->solve(x, f);
}

SolveReport NsSolver::pressure_poisson(const StaggeredVector& u_tilde, Field& p_tilde) {
    const Field div = divergence_edges_to_cc(u_tilde);
    if (pressure_solver_->singular()) {
        const double m = mean_active(div);
        if (std::abs(m) > 1e-10)
            throw IncompatibleRhs("pressure Poisson right-hand side has mean " + std::to_string(m) +
                                  "; the boundary flux of the intermediate velocity does not vanish");
    }
    const double* dd = div.data();
    double* r = div_rhs_.data();
    for (std::size_t q = 0; q < div_rhs_.size(); ++q) r[q] = -dd[q];
    div_rhs_.mark_stale();
    return pressure_solver_->solve(p_tilde, div_rhs_);
}

void NsSolver::correct(int comp, const Field& x_tilde, const Field& p_tilde, Field& out) const {
    if (!p_tilde.ghosts_fresh()) throw UnfilledGhosts("correct: stale pressure ghosts");
    if (&out != &x_tilde) copy_values(x_tilde, out);
    const double dt = params_.dt;
    const double inv_h = 1.0 / grid_.h;
    const double* pd = p_tilde.data();
    const std::ptrdiff_t ps = p_tilde.stride(comp);
    double* o = out.data();
    const int i0 = out.active_begin(0), i1 = out.active_end(0);
    detail::parallel_rows(out, [&](int j, int k) {
        for (int i = i0; i < i1; ++i) {
            const std::ptrdiff_t pc = p_tilde.index(i, j, k);
            o[out.index(i, j, k)] -= dt * ((pd[pc] - pd[pc - ps]) * inv_h);
        }
    });
    apply_ghosts(out, params_.vel_bc[static_cast<std::size_t>(comp)]);
}

void NsSolver::pressure_update(const Field& p, const Field& p_tilde, Field& out) {
    combine(out, 1.0, p, 1.0, p_tilde);
}

StepReport NsSolver::step() {
    StepReport rep;
    rep.step = n_ + 1;
    const int dim = params_.dim;
    for (const Step& st : schedule_.steps) {
        const Lookup lookup = [&](const Quantity& q) -> const Field& {
            for (const Binding& b : st.reads)
                if (b.q == q) return slot(b.slot);
            throw MissingBinding("step " + st.label + " (" + to_string(st.formula) + ") has no binding for " +
                                 to_string(q));
        };
        switch (st.formula) {
        case Formula::MomentumRhs: momentum_rhs(st.comp, lookup, rhs_[static_cast<std::size_t>(st.comp)]); break;
        case Formula::MomentumSolve: {
            Field& x = slot(st.writes.at(0).slot);
            if (st.guess && st.guess->slot != st.writes.at(0).slot) copy_values(slot(st.guess->slot), x);
            rep.momentum[static_cast<std::size_t>(st.comp)] =
                momentum_solve(st.comp, rhs_[static_cast<std::size_t>(st.comp)], x);
            break;
        }
        case Formula::PressureSolve: {
            StaggeredVector ut;
            ut.dim = dim;
            for (int d = 0; d < dim; ++d) ut[d] = lookup(Quantity{d, true, 1});
            Field& pt = slot(st.writes.at(0).slot);
            if (st.guess && st.guess->slot != st.writes.at(0).slot) copy_values(slot(st.guess->slot), pt);
            rep.pressure = pressure_poisson(ut, pt);
            break;
        }
        case Formula::Correct:
            correct(st.comp, lookup(Quantity{st.comp, true, 1}), lookup(Quantity{kPressure, true, 1}),
                    slot(st.writes.at(0).slot));
            break;
        case Formula::PressureUpdate:
            pressure_update(lookup(Quantity{kPressure, false, 0}), lookup(Quantity{kPressure, true, 1}),
                            slot(st.writes.at(0).slot));
            break;
        case Formula::Copy: copy_values(slot(st.reads.at(0).slot), slot(st.writes.at(0).slot)); break;
        }
    }
    ++n_;
    rep.time = time();
    const StaggeredVector u = velocity();
    const Field div = divergence_edges_to_cc(u);
    rep.divergence_integral = integral_divergence(u);
    rep.divergence_norm = norm_l2_scaled(div);
    return rep;
}

} // namespace mgfas
