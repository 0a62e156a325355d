#include "support.hpp"

#include "mgfas/errors.hpp"
#include "mgfas/ns.hpp"
#include "mgfas/ns_cases.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <utility>

using namespace mgfas;
using mgtest::active_points;
using mgtest::Dense;
using mgtest::gather;
using mgtest::Idx;

namespace {

constexpr double pi = std::numbers::pi;

// Classical WENO3 derivative written from its candidate stencils: a one-sided
// second-order difference and the centred difference, blended by smoothness.
double weno3_oracle(const double q[5], double speed, double h) {
    double s0, s1, b0, b1;
    if (speed >= 0) {
        s0 = (3 * q[2] - 4 * q[1] + q[0]) / (2 * h);
        b0 = std::pow(q[2] - 2 * q[1] + q[0], 2);
    } else {
        s0 = -(3 * q[2] - 4 * q[3] + q[4]) / (2 * h);
        b0 = std::pow(q[4] - 2 * q[3] + q[2], 2);
    }
    s1 = (q[3] - q[1]) / (2 * h);
    b1 = std::pow(q[3] - 2 * q[2] + q[1], 2);
    const double a0 = (1.0 / 3) / std::pow(1e-6 + b0, 2), a1 = (2.0 / 3) / std::pow(1e-6 + b1, 2);
    return (a0 * s0 + a1 * s1) / (a0 + a1);
}

struct State {
    StaggeredVector u;
    Field p;
};

State manufactured_state(const GridLevel& g, double t) {
    State s{StaggeredVector::zeros(g, 2), Field(g, Location::Cell, 1)};
    mgtest::fill_everywhere(s.u[0], [t](double x, double y, double) { return manufactured::u(x, y, t); });
    mgtest::fill_everywhere(s.u[1], [t](double x, double y, double) { return manufactured::v(x, y, t); });
    mgtest::fill_everywhere(s.p, [t](double x, double y, double) { return manufactured::p(x, y, t); });
    return s;
}

// f for component c of the 2D first/second-order right-hand side, evaluated
// pointwise from plain formulas. adv are the advecting velocities, q the
// advected (already mixed) component, x the current component.
double rhs_oracle(int c, const StaggeredVector& adv, const Field& x, const Field& p, int i, int j, double dt,
                  double re, int order, double tf) {
    const double h = x.h();
    const Field& q = adv[c];
    double speed[2];
    speed[c] = q(i, j);
    const int o = 1 - c;
    const Field& a = adv[o];
    // the other component lives on the four points around (i, j)
    if (c == 0)
        speed[o] = 0.25 * (a(i - 1, j) + a(i, j) + a(i - 1, j + 1) + a(i, j + 1));
    else
        speed[o] = 0.25 * (a(i, j - 1) + a(i + 1, j - 1) + a(i, j) + a(i + 1, j));
    double conv = 0;
    for (int ax = 0; ax < 2; ++ax) {
        double w[5];
        for (int m = -2; m <= 2; ++m) w[m + 2] = ax == 0 ? q(i + m, j) : q(i, j + m);
        conv += speed[ax] * weno3_oracle(w, speed[ax], h);
    }
    const double gp = c == 0 ? (p(i, j) - p(i - 1, j)) / h : (p(i, j) - p(i, j - 1)) / h;
    double f = x(i, j) - dt * conv - dt * gp;
    if (order == 2)
        f += dt / (2 * re) * (x(i - 1, j) + x(i + 1, j) + x(i, j - 1) + x(i, j + 1) - 4 * x(i, j)) / (h * h);
    f += dt * manufactured::force(c, x.coord(0, i), x.coord(1, j), tf, re);
    return f;
}

NSParams params_2d(double dt, int order, ScheduleMode mode) {
    NSParams p;
    p.re = 100;
    p.dt = dt;
    p.t_end = 1e3;
    p.dim = 2;
    p.order = order;
    p.mode = mode;
    p.fas = {1e-11, 30, 2, 1};
    return p;
}

NSParams with_depth(NSParams p, int n) {
    p.fas.mesh_level = FasParams::full_depth(n);
    return p;
}

// Discretely divergence-free velocity from a node-sampled stream function.
StaggeredVector curl_of(const GridLevel& g, const std::function<double(double, double)>& psi) {
    StaggeredVector u = StaggeredVector::zeros(g, 2);
    const double h = g.h;
    for (int j = 0; j < u[0].extent(1); ++j)
        for (int i = 0; i < u[0].extent(0); ++i) u[0](i, j) = (psi(i * h, (j + 1) * h) - psi(i * h, j * h)) / h;
    for (int j = 0; j < u[1].extent(1); ++j)
        for (int i = 0; i < u[1].extent(0); ++i) u[1](i, j) = -(psi((i + 1) * h, j * h) - psi(i * h, j * h)) / h;
    for (int c = 0; c < 2; ++c) apply_ghosts(u[c], BoundaryCondition::dirichlet());
    return u;
}

} // namespace

TEST_SUITE("ns") {

TEST_CASE("parameter validation") {
    NSParams p = params_2d(0.01, 1, ScheduleMode::Efficient);
    CHECK_NOTHROW(p.validate());
    p.dt = 0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = params_2d(0.01, 3, ScheduleMode::Efficient);
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = params_2d(0.01, 1, ScheduleMode::Efficient);
    p.re = 0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = params_2d(2.0, 1, ScheduleMode::Efficient);
    p.t_end = 1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("quiescent fluid in a closed box stays at rest") {
    const GridLevel g = GridLevel::unit(2, 16);
    for (int order : {1, 2})
        for (ScheduleMode m : {ScheduleMode::Classical, ScheduleMode::Efficient}) {
            NsSolver ns(g, with_depth(params_2d(0.01, order, m), 16));
            ns.set_initial_zero();
            for (int s = 0; s < 3; ++s) ns.step();
            for (int c = 0; c < 2; ++c)
                for (double v : ns.velocity(c).values()) CHECK(v == 0.0);
            for (double v : ns.pressure().values()) CHECK(v == 0.0);
        }
}

TEST_CASE("momentum right-hand side") {
    const GridLevel g = GridLevel::unit(2, 16);
    SUBCASE("zero state gives zero") {
        NsSolver ns(g, with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), 16));
        State s{StaggeredVector::zeros(g, 2), Field(g, Location::Cell)};
        for (int c = 0; c < 2; ++c) s.u[c].mark_fresh();
        s.p.mark_fresh();
        const NsSolver::Lookup lookup = [&](const Quantity& q) -> const Field& {
            return q.var == kPressure ? s.p : s.u[q.var];
        };
        Field f(g, Location::EdgeX, 2);
        ns.momentum_rhs(0, lookup, f);
        for (double v : f.values()) CHECK(v == 0.0);
    }
    SUBCASE("uniform velocity is carried unchanged") {
        NsSolver ns(g, with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), 16));
        State s{StaggeredVector::zeros(g, 2), Field(g, Location::Cell)};
        s.u[0].fill(0.6);
        for (int c = 0; c < 2; ++c) s.u[c].mark_fresh();
        s.p.mark_fresh();
        const NsSolver::Lookup lookup = [&](const Quantity& q) -> const Field& {
            return q.var == kPressure ? s.p : s.u[q.var];
        };
        Field f(g, Location::EdgeX, 2);
        ns.momentum_rhs(0, lookup, f);
        for (const auto& q : active_points(f)) CHECK(std::as_const(f)(q[0], q[1]) == 0.6);
    }
    SUBCASE("manufactured state against the pointwise oracle") {
        const GridLevel g32 = GridLevel::unit(2, 32);
        const double dt = 0.01, re = 10.0;
        for (double t : {0.0, 0.5}) {
            for (int order : {1, 2}) {
                NSParams prm = with_depth(params_2d(dt, order, ScheduleMode::Efficient), 32);
                prm.re = re;
                prm.forcing = manufactured::forcing(re);
                NsSolver ns(g32, prm);
                const State s = manufactured_state(g32, t);
                const State tilde = manufactured_state(g32, t + dt);
                // x^{n-1} = x^n: the extrapolation collapses to x^n
                const NsSolver::Lookup lookup = [&](const Quantity& q) -> const Field& {
                    if (q.var == kPressure) return s.p;
                    return q.tilde ? tilde.u[q.var] : s.u[q.var];
                };
                for (int c = 0; c < 2; ++c) {
                    Field f(g32, edge_location(c), 2);
                    ns.momentum_rhs(c, lookup, f);
                    // advecting velocities: components before c use (x^n + x~^{n+1})/2 in second order
                    StaggeredVector adv = StaggeredVector::zeros(g32, 2);
                    for (int d = 0; d < 2; ++d) {
                        adv[d] = s.u[d];
                        if (order == 2 && d < c)
                            for (std::size_t k = 0; k < adv[d].size(); ++k)
                                adv[d].values()[k] = 0.5 * (s.u[d].values()[k] + tilde.u[d].values()[k]);
                    }
                    const double tf = order == 1 ? dt : 0.5 * dt;
                    double err = 0, scale = 0;
                    for (const auto& q : active_points(f)) {
                        const double ref = rhs_oracle(c, adv, s.u[c], s.p, q[0], q[1], dt, re, order, tf);
                        err = std::max(err, std::abs(std::as_const(f)(q[0], q[1]) - ref));
                        scale = std::max(scale, std::abs(ref));
                    }
                    CAPTURE(t);
                    CAPTURE(order);
                    CAPTURE(c);
                    CHECK(err <= 1e-13 * scale);
                }
            }
        }
    }
    SUBCASE("second-order mixtures reduce to x^n on the first step") {
        const GridLevel g8 = GridLevel::unit(2, 8);
        NsSolver ns(g8, with_depth(params_2d(0.01, 2, ScheduleMode::Efficient), 8));
        NsSolver ns1(g8, with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), 8));
        State s = manufactured_state(g8, 0.7);
        const NsSolver::Lookup lookup = [&](const Quantity& q) -> const Field& {
            return q.var == kPressure ? s.p : s.u[q.var];
        };
        // order 2 with x^{n-1} = x~^{n+1} = x^n differs from order 1 only by the explicit half diffusion
        Field f2(g8, Location::EdgeY, 2), f1(g8, Location::EdgeY, 2);
        ns.momentum_rhs(1, lookup, f2);
        ns1.momentum_rhs(1, lookup, f1);
        const Field lap = apply_operator(s.u[1], {0.0, -1.0});
        for (const auto& q : active_points(f1)) {
            const double expect = std::as_const(f1)(q[0], q[1]) + 0.01 / 200.0 * std::as_const(lap)(q[0], q[1]);
            CHECK(std::as_const(f2)(q[0], q[1]) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("momentum solve inverts the Helmholtz operator") {
    const GridLevel g = GridLevel::unit(2, 16);
    NsSolver ns(g, with_depth(params_2d(0.05, 1, ScheduleMode::Efficient), 16));
    Field x(g, Location::EdgeX, 2);
    fill_random(x, 3, -1, 1);
    apply_ghosts(x, BoundaryCondition::dirichlet());
    const Field f = apply_operator(x, {1.0, 0.05 / 100});
    Field y(g, Location::EdgeX, 2);
    CHECK(ns.momentum_solve(0, f, y).converged);
    CHECK(max_abs_diff(x, y) <= 1e-10);

    NsSolver tiny(g, with_depth(params_2d(1e-13, 1, ScheduleMode::Efficient), 16));
    Field z(g, Location::EdgeX, 2);
    Field rhs = x;
    CHECK(tiny.momentum_solve(0, rhs, z).converged);
    CHECK(max_abs_diff(z, x) <= 1e-9);
}

TEST_CASE("first tentative velocity of the cavity is confined to the lid") {
    const int n = 32;
    const GridLevel g = GridLevel::unit(2, n);
    NSParams prm = with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), n);
    prm.vel_bc = cavity_bc(2, 1.0);
    NsSolver ns(g, prm);
    Field f(g, Location::EdgeX, 2), ut(g, Location::EdgeX, 2);
    State s{StaggeredVector::zeros(g, 2), Field(g, Location::Cell)};
    for (int c = 0; c < 2; ++c) apply_ghosts(s.u[c], prm.vel_bc[c]);
    apply_ghosts(s.p, prm.p_bc);
    const NsSolver::Lookup lookup = [&](const Quantity& q) -> const Field& {
        return q.var == kPressure ? s.p : s.u[q.var];
    };
    ns.momentum_rhs(0, lookup, f);
    CHECK(ns.momentum_solve(0, f, ut).converged);
    double top = 0, below = 0;
    int arg_j = -1;
    for (const auto& q : active_points(ut)) {
        const double v = std::abs(std::as_const(ut)(q[0], q[1]));
        if (v > top) {
            top = v;
            arg_j = q[1];
        }
        if (q[1] < n / 2) below = std::max(below, v);
    }
    CHECK(arg_j == n - 1);
    CHECK(top > 0.1);
    CHECK(below <= 1e-12 * top);
}

TEST_CASE("pressure Poisson solve") {
    const int n = 32;
    const GridLevel g = GridLevel::unit(2, n);
    const double dt = 0.02;
    NsSolver ns(g, with_depth(params_2d(dt, 1, ScheduleMode::Efficient), n));
    SUBCASE("divergence-free velocity gives zero pressure") {
        StaggeredVector u = curl_of(g, [](double x, double y) {
            return std::pow(std::sin(pi * x) * std::sin(pi * y), 2);
        });
        Field pt(g, Location::Cell);
        CHECK(ns.pressure_poisson(u, pt).converged);
        for (const auto& q : active_points(pt)) CHECK(std::abs(std::as_const(pt)(q[0], q[1])) <= 1e-12);
    }
    SUBCASE("gradient velocity recovers its potential") {
        Field phi = Field(g, Location::Cell);
        for (const auto& q : active_points(phi))
            phi(q[0], q[1]) = std::cos(pi * phi.coord(0, q[0])) * std::cos(2 * pi * phi.coord(1, q[1])) + 0.3;
        apply_ghosts(phi, BoundaryCondition::neumann());
        StaggeredVector u = gradient_cc_to_edges(phi, 2);
        for (int c = 0; c < 2; ++c) {
            for (double& v : u[c].values()) v *= dt;
            apply_ghosts(u[c], BoundaryCondition::dirichlet());
        }
        Field pt(g, Location::Cell);
        CHECK(ns.pressure_poisson(u, pt).converged);
        shift_active(phi, -mean_active(phi));
        CHECK(max_abs_diff(pt, phi) <= 1e-8);
        CHECK(std::abs(mean_active(pt)) <= 1e-14);
    }
    SUBCASE("net boundary flux is incompatible") {
        StaggeredVector u = StaggeredVector::zeros(g, 2);
        for (int j = 0; j < n; ++j) u[0](n, j) = 1.0;
        u[0].mark_fresh();
        u[1].mark_fresh();
        Field pt(g, Location::Cell);
        CHECK_THROWS_AS(ns.pressure_poisson(u, pt), IncompatibleRhs);
    }
}

TEST_CASE("correction and pressure update") {
    const GridLevel g = GridLevel::unit(2, 8);
    const double dt = 0.1;
    NsSolver ns(g, with_depth(params_2d(dt, 1, ScheduleMode::Efficient), 8));
    Field ut(g, Location::EdgeX, 2);
    fill_random(ut, 1, -1, 1);
    apply_ghosts(ut, BoundaryCondition::dirichlet());
    Field out(g, Location::EdgeX, 2);

    SUBCASE("zero or uniform pressure leaves the velocity unchanged") {
        for (double c : {0.0, 2.5}) {
            Field pt(g, Location::Cell);
            pt.fill(c);
            apply_ghosts(pt, BoundaryCondition::neumann());
            ns.correct(0, ut, pt, out);
            CHECK(mgtest::bitwise_equal_active(out, ut));
        }
        Field p(g, Location::Cell), zero(g, Location::Cell), pn(g, Location::Cell);
        fill_random(p, 2);
        NsSolver::pressure_update(p, zero, pn);
        CHECK(mgtest::bitwise_equal_active(pn, p));
    }
    SUBCASE("random fields against the dense gradient") {
        Field pt(g, Location::Cell);
        fill_random(pt, 3, -1, 1);
        apply_ghosts(pt, BoundaryCondition::neumann());
        for (int c = 0; c < 2; ++c) {
            Field x(g, edge_location(c), 2), o(g, edge_location(c), 2);
            fill_random(x, 10 + c, -1, 1);
            apply_ghosts(x, BoundaryCondition::dirichlet());
            ns.correct(c, x, pt, o);
            auto enum_ = mgtest::numbering(x);
            auto pnum = mgtest::numbering(pt);
            Dense G(static_cast<int>(enum_.size()), static_cast<int>(pnum.size()));
            for (const auto& [e, row] : enum_) {
                Idx lo = e;
                lo[c] -= 1;
                G(row, pnum.at(e)) += 1.0 / g.h;
                G(row, pnum.at(lo)) -= 1.0 / g.h;
            }
            const auto pv = gather(pt);
            const auto gp = G.apply(pv);
            const auto xv = gather(x);
            std::vector<double> ref(xv.size()), scale(xv.size());
            const auto mag = G.magnitude(pv);
            for (std::size_t k = 0; k < xv.size(); ++k) {
                ref[k] = xv[k] - dt * gp[k];
                scale[k] = std::abs(xv[k]) + dt * mag[k];
            }
            CHECK(mgtest::rel_diff(gather(o), ref, scale) <= 1e-15);
        }
        Field p(g, Location::Cell), pn(g, Location::Cell);
        fill_random(p, 4);
        NsSolver::pressure_update(p, pt, pn);
        for (const auto& q : active_points(pn))
            CHECK(std::as_const(pn)(q[0], q[1]) == std::as_const(p)(q[0], q[1]) + std::as_const(pt)(q[0], q[1]));
    }
}

TEST_CASE("resident slot accounting") {
    const GridLevel g = GridLevel::unit(3, 8);
    struct Case {
        ScheduleMode mode;
        int order, expect;
    };
    for (const Case& c : {Case{ScheduleMode::Efficient, 1, 8}, Case{ScheduleMode::Efficient, 2, 8},
                          Case{ScheduleMode::Classical, 1, 12}, Case{ScheduleMode::Classical, 2, 15}}) {
        NSParams prm = params_2d(0.01, c.order, c.mode);
        prm.dim = 3;
        prm.fas.mesh_level = 2;
        const long long before = resident_allocations();
        NsSolver ns(g, prm);
        CHECK(resident_allocations() - before == c.expect);
        CHECK(ns.resident_fields() == c.expect);
        ns.set_initial_zero();
        ns.step();
        CHECK(resident_allocations() - before == c.expect);
    }
    NsSolver two(GridLevel::unit(2, 8), with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), 8));
    CHECK(two.resident_fields() == 6);
}

TEST_CASE("classical and efficient schedules produce identical fields") {
    const int n = 32;
    const GridLevel g = GridLevel::unit(2, n);
    for (int order : {1, 2}) {
        std::array<std::unique_ptr<NsSolver>, 2> run;
        int k = 0;
        for (ScheduleMode m : {ScheduleMode::Classical, ScheduleMode::Efficient}) {
            NSParams prm = with_depth(params_2d(0.01, order, m), n);
            prm.vel_bc = cavity_bc(2);
            run[k] = std::make_unique<NsSolver>(g, prm);
            run[k]->set_initial_zero();
            for (int s = 0; s < 30; ++s) run[k]->step();
            ++k;
        }
        for (int c = 0; c < 2; ++c) CHECK(mgtest::bitwise_equal_active(run[0]->velocity(c), run[1]->velocity(c)));
        CHECK(mgtest::bitwise_equal_active(run[0]->pressure(), run[1]->pressure()));
    }
}

TEST_CASE("cavity steps keep the velocity discretely divergence free") {
    const int n = 32;
    const GridLevel g = GridLevel::unit(2, n);
    for (int order : {1, 2}) {
        NSParams prm = with_depth(params_2d(0.01, order, ScheduleMode::Efficient), n);
        prm.vel_bc = cavity_bc(2);
        NsSolver ns(g, prm);
        ns.set_initial_zero();
        for (int s = 0; s < 20; ++s) {
            const StepReport r = ns.step();
            CHECK(std::abs(r.divergence_integral) <= 1e-12);
            CHECK(std::abs(integral_divergence(ns.velocity())) <= 1e-12);
            CHECK(r.pressure.converged);
        }
    }
}

TEST_CASE("kinetic energy decays with static walls") {
    const int n = 32;
    const GridLevel g = GridLevel::unit(2, n);
    NSParams prm = with_depth(params_2d(0.01, 1, ScheduleMode::Efficient), n);
    prm.vel_bc = cavity_bc(2, 0.0);
    NsSolver ns(g, prm);
    StaggeredVector u0 = curl_of(g, [](double x, double y) {
        return std::pow(std::sin(pi * x) * std::sin(pi * y), 2) / pi;
    });
    Field p0(g, Location::Cell);
    ns.set_initial(u0, p0);
    double e = kinetic_energy(ns.velocity());
    CHECK(e > 0.0);
    for (int s = 0; s < 30; ++s) {
        ns.step();
        const double next = kinetic_energy(ns.velocity());
        CHECK(next <= e + 1e-12);
        e = next;
    }
}

TEST_CASE("first-order scheme converges in time") {
    const auto rows = temporal_test(64, 1, ScheduleMode::Efficient, {0.2, 0.1, 0.05});
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.converged);
    for (int c = 0; c < 2; ++c) {
        CHECK(rows[1].error[c] < rows[0].error[c]);
        CHECK(rows[2].error[c] < rows[1].error[c]);
        CHECK(rows[2].order[c] > 0.8);
    }
}

TEST_CASE("manufactured solution is consistent") {
    // walls are no-slip and the pressure has zero mean
    for (double s : {0.0, 0.3, 1.0}) {
        CHECK(std::abs(manufactured::u(0.0, s, 0.7)) <= 1e-15);
        CHECK(std::abs(manufactured::u(1.0, s, 0.7)) <= 1e-15);
        CHECK(std::abs(manufactured::v(s, 0.0, 0.7)) <= 1e-15);
        CHECK(std::abs(manufactured::v(s, 1.0, 0.7)) <= 1e-15);
    }
    // the forcing equals the residual of the momentum equation by central differences
    const double re = 10, x = 0.31, y = 0.62, t = 0.4, e = 1e-4;
    auto U = [](double a, double b, double c) { return manufactured::u(a, b, c); };
    auto V = [](double a, double b, double c) { return manufactured::v(a, b, c); };
    auto P = [](double a, double b, double c) { return manufactured::p(a, b, c); };
    auto d = [&](auto f, int axis) {
        if (axis == 0) return (f(x + e, y, t) - f(x - e, y, t)) / (2 * e);
        if (axis == 1) return (f(x, y + e, t) - f(x, y - e, t)) / (2 * e);
        return (f(x, y, t + e) - f(x, y, t - e)) / (2 * e);
    };
    auto lap = [&](auto f) {
        return (f(x + e, y, t) + f(x - e, y, t) + f(x, y + e, t) + f(x, y - e, t) - 4 * f(x, y, t)) / (e * e);
    };
    const double fu = d(U, 2) + U(x, y, t) * d(U, 0) + V(x, y, t) * d(U, 1) - lap(U) / re + d(P, 0);
    const double fv = d(V, 2) + U(x, y, t) * d(V, 0) + V(x, y, t) * d(V, 1) - lap(V) / re + d(P, 1);
    CHECK(manufactured::force(0, x, y, t, re) == doctest::Approx(fu).epsilon(1e-5));
    CHECK(manufactured::force(1, x, y, t, re) == doctest::Approx(fv).epsilon(1e-5));
}

TEST_CASE("Ghia reference data") {
    const GhiaData d = load_ghia(default_ghia_path());
    REQUIRE(d.y.size() == 17);
    REQUIRE(d.x.size() == 17);
    for (int c = 0; c < 3; ++c) {
        CHECK(d.u[c].size() == 17);
        CHECK(d.v[c].size() == 17);
    }
    CHECK(d.y.front() == 1.0);
    CHECK(d.u[0].front() == 1.0);
    CHECK(d.y.back() == 0.0);
    CHECK(d.u[0][8] == doctest::Approx(-0.20581)); // y = 0.5, Re = 100
    CHECK(GhiaData::column(400) == 1);
    CHECK(GhiaData::column(250) == -1);

    // u minimum deepens with Re
    const double m100 = *std::min_element(d.u[0].begin(), d.u[0].end());
    const double m400 = *std::min_element(d.u[1].begin(), d.u[1].end());
    const double m1000 = *std::min_element(d.u[2].begin(), d.u[2].end());
    CHECK(m100 > m400);
    CHECK(m400 > m1000);

    CHECK_THROWS_AS(load_ghia("/nonexistent/ghia.txt"), ConfigError);
    try {
        load_ghia("/nonexistent/ghia.txt");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/ghia.txt") != std::string::npos);
    }
    const auto bad = std::filesystem::temp_directory_path() / "mgfas_bad_ghia.txt";
    {
        std::ofstream o(bad);
        o << "# header\ny u_Re100 u_Re400 u_Re1000\n1.0 1.0 1.0\n";
    }
    CHECK_THROWS_AS(load_ghia(bad.string()), ConfigError);
    std::filesystem::remove(bad);
}

TEST_CASE("profile interpolation") {
    Profile p{{0.0, 0.5, 1.0}, {0.0, 1.0, 3.0}};
    CHECK(p.at(0.25) == doctest::Approx(0.5));
    CHECK(p.at(0.75) == doctest::Approx(2.0));
    CHECK(p.at(-1.0) == 0.0);
    CHECK(p.at(2.0) == 3.0);
}

} // TEST_SUITE
