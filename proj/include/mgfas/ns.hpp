#pragma once

// Projection time stepping for incompressible Navier-Stokes on the
// staggered grid, executed through a slot schedule.
//
// First order, per component c:
//   f_c = -dt (u^n . grad) x_c^n - dt (grad p^n)_c + x_c^n [+ dt F_c(t^{n+1})]
//   x~ - (dt/Re) lap x~ = f_c
// Second order (Crank-Nicolson viscous splitting):
//   f_c = -dt (a . grad) q + dt/(2Re) lap x_c^n - dt (grad p^n)_c + x_c^n [+ dt F_c(t^{n+1/2})]
//   with q = (3 x_c^n - x_c^{n-1})/2, a_d = (x_d^n + x~_d^{n+1})/2 for d < c and
//   a_d = (3 x_d^n - x_d^{n-1})/2 otherwise;  x~ - dt/(2Re) lap x~ = f_c
// Then, for both orders:
//   -dt lap p~ = -div u~   (homogeneous Neumann, zero mean)
//   x^{n+1} = x~ - dt (grad p~)_c,   p^{n+1} = p^n + p~
// Convection uses the WENO3 operator of stencil.hpp.

#include "mgfas/fas.hpp"
#include "mgfas/schedule.hpp"
#include "mgfas/stencil.hpp"

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace mgfas {

/// Body force F_c(x, t) added to the momentum equation of component c.
using Forcing = std::function<double(int comp, const std::array<double, 3>& x, double t)>;

struct NSParams {
    double re = 100.0;
    double dt = 1e-3;
    double t_end = 1.0;
    int dim = 2;
    int order = 1;
    ScheduleMode mode = ScheduleMode::Efficient;
    std::array<BoundaryCondition, 3> vel_bc{BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet(),
                                            BoundaryCondition::dirichlet()};
    BoundaryCondition p_bc = BoundaryCondition::neumann();
    FasParams fas{};
    Forcing forcing{};

    void validate() const;
};

/// No-slip box whose high face along the last axis slides with speed `lid_speed` along x.
std::array<BoundaryCondition, 3> cavity_bc(int dim, double lid_speed = 1.0);

struct StepReport {
    int step = 0;
    double time = 0.0;
    std::array<SolveReport, 3> momentum{};
    SolveReport pressure{};
    double divergence_integral = 0.0; // h^d * sum of div u^{n+1}
    double divergence_norm = 0.0;     // h^{d/2} ||div u^{n+1}||
};

/// Process-wide count of resident slot fields allocated by NsSolver instances.
long long resident_allocations();

/// Runs one schedule on one grid. Resident slots are allocated once; solver
/// workspace and right-hand-side temporaries are not counted as resident.
class NsSolver {
public:
    NsSolver(const GridLevel& grid, const NSParams& params);

    /// Sets u^0 (and u^{-1} = u^0), p^0; the first guesses are u~^0 = u^0, p~^0 = 0.
    void set_initial(const StaggeredVector& u0, const Field& p0);
    void set_initial_zero();

    StepReport step();

    /// Current velocity component / pressure (the slots holding x^n and p^n).
    const Field& velocity(int c) const;
    const Field& pressure() const;
    StaggeredVector velocity() const;

    int steps_taken() const { return n_; }
    double time() const { return n_ * params_.dt; }
    int resident_fields() const { return static_cast<int>(slots_.size()); }
    const SlotSchedule& schedule() const { return schedule_; }
    const NSParams& params() const { return params_; }
    const GridLevel& grid() const { return grid_; }

    /// Building blocks, exposed for testing. `lookup` supplies x^n, p^n (and x^{n-1},
    /// x~^{n+1} for second order) by quantity.
    using Lookup = std::function<const Field&(const Quantity&)>;
    void momentum_rhs(int comp, const Lookup& lookup, Field& out);
    SolveReport momentum_solve(int comp, const Field& f, Field& x);
    SolveReport pressure_poisson(const StaggeredVector& u_tilde, Field& p_tilde);
    void correct(int comp, const Field& x_tilde, const Field& p_tilde, Field& out) const;
    static void pressure_update(const Field& p, const Field& p_tilde, Field& out);

private:
    Field& slot(int i) { return slots_[static_cast<std::size_t>(i)]; }
    const Field& slot(int i) const { return slots_[static_cast<std::size_t>(i)]; }
    Location slot_location(const std::string& name) const;

    GridLevel grid_;
    NSParams params_;
    SlotSchedule schedule_;
    std::vector<Field> slots_;
    std::vector<std::unique_ptr<FasSolver>> momentum_solvers_;
    std::unique_ptr<FasSolver> pressure_solver_;
    std::array<Field, 3> rhs_;
    std::array<Field, 3> mix_;   // advecting velocities
    Field div_rhs_;
    int n_ = 0;
};

} // namespace mgfas
