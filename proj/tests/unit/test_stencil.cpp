#include "oracles.hpp"

#include "mgfas/errors.hpp"
#include "mgfas/poisson.hpp"
#include "mgfas/stencil.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>

using namespace mgfas;
using mgtest::active_points;
using mgtest::Dense;
using mgtest::gather;
using mgtest::Idx;
using mgtest::assemble_operator;

namespace {

constexpr double pi = std::numbers::pi;

void check_operator_oracle(const GridLevel& g, Location loc, const OperatorCoeffs& c, const BoundaryCondition& bc,
                           std::uint64_t seed) {
    Field p(g, loc);
    fill_random(p, seed, -1.0, 1.0);
    apply_ghosts(p, bc);
    const Dense A = assemble_operator(p, c, bc);
    const std::vector<double> x = gather(p);
    const std::vector<double> ref = A.apply(x);
    const std::vector<double> got = gather(apply_operator(p, c));
    CHECK(mgtest::rel_diff(got, ref, A.magnitude(x)) <= 1e-14);
}

} // namespace

TEST_SUITE("stencil") {

TEST_CASE("operator of a constant with consistent ghosts is a times the constant") {
    GridLevel g = GridLevel::unit(2, 8);
    Field p(g, Location::Cell);
    p.fill(3.25);
    apply_ghosts(p, BoundaryCondition::dirichlet(3.25));
    Field out = apply_operator(p, {1.0, 1.0});
    for (const auto& q : active_points(out)) CHECK(std::as_const(out)(q[0], q[1]) == doctest::Approx(3.25));
}

TEST_CASE("spike response of the five-point Laplacian") {
    GridLevel g = GridLevel::make(2, {5, 5, 1}, {0, 0, 0}, {5, 5, 1});
    REQUIRE(g.h == 1.0);
    Field p(g, Location::Cell);
    p(2, 2) = 1.0;
    apply_ghosts(p, BoundaryCondition::dirichlet());
    Field out = apply_operator(p, {0.0, 1.0});
    const Field& o = out;
    CHECK(o(2, 2) == 4.0);
    CHECK(o(1, 2) == -1.0);
    CHECK(o(3, 2) == -1.0);
    CHECK(o(2, 1) == -1.0);
    CHECK(o(2, 3) == -1.0);
    CHECK(o(1, 1) == 0.0);
    CHECK(o(0, 0) == 0.0);
}

TEST_CASE("operator on sampled benchmark solution matches pointwise stencil evaluation") {
    GridLevel g = GridLevel::unit(2, 16);
    Field p = sample(g, Location::Cell, [](const std::array<double, 3>& x) { return benchmark_exact(x, 2); });
    apply_ghosts(p, benchmark_bc());
    Field out = apply_operator(p, {1.0, 1.0});
    const double h = g.h;
    for (const auto& q : active_points(p)) {
        const int i = q[0], j = q[1];
        auto val = [&](int a, int b) {
            // reflect through the wall by hand
            if (a < 0) return -benchmark_exact({(0.5) * h, (b + 0.5) * h, 0}, 2);
            if (a > 15) return -benchmark_exact({(15.5) * h, (b + 0.5) * h, 0}, 2);
            if (b < 0) return -benchmark_exact({(a + 0.5) * h, 0.5 * h, 0}, 2);
            if (b > 15) return -benchmark_exact({(a + 0.5) * h, 15.5 * h, 0}, 2);
            return benchmark_exact({(a + 0.5) * h, (b + 0.5) * h, 0}, 2);
        };
        const double c = val(i, j);
        const double lap = (val(i - 1, j) + val(i + 1, j) + val(i, j - 1) + val(i, j + 1) - 4.0 * c) / (h * h);
        const double ref = c - lap;
        CHECK(std::as_const(out)(i, j) == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("operator matches the assembled dense matrix") {
    const OperatorCoeffs c{0.7, 1.3};
    SUBCASE("2D cells, Dirichlet") { check_operator_oracle(GridLevel::unit(2, 16), Location::Cell, c, BoundaryCondition::dirichlet(), 1); }
    SUBCASE("2D cells, Neumann") { check_operator_oracle(GridLevel::unit(2, 16), Location::Cell, c, BoundaryCondition::neumann(), 2); }
    SUBCASE("2D cells, mixed faces") {
        BoundaryCondition bc = BoundaryCondition::dirichlet().set(0, 1, {BcKind::NeumannCopy, 0.0});
        check_operator_oracle(GridLevel::unit(2, 16), Location::Cell, c, bc, 3);
    }
    SUBCASE("2D edges") {
        check_operator_oracle(GridLevel::unit(2, 16), Location::EdgeX, c, BoundaryCondition::dirichlet(), 4);
        check_operator_oracle(GridLevel::unit(2, 16), Location::EdgeY, c, BoundaryCondition::dirichlet(), 5);
    }
    SUBCASE("2D periodic") {
        GridLevel g = GridLevel::unit(2, 8);
        g.periodic = {true, true, false};
        check_operator_oracle(g, Location::Cell, c, BoundaryCondition::periodic_all(), 6);
    }
    SUBCASE("3D cells and edges") {
        GridLevel g = GridLevel::unit(3, 8);
        check_operator_oracle(g, Location::Cell, c, BoundaryCondition::dirichlet(), 7);
        check_operator_oracle(g, Location::EdgeX, c, BoundaryCondition::dirichlet(), 8);
        check_operator_oracle(g, Location::EdgeY, c, BoundaryCondition::dirichlet(), 9);
        check_operator_oracle(g, Location::EdgeZ, c, BoundaryCondition::dirichlet(), 10);
    }
}

TEST_CASE("residual matches f - A p from the dense matrix") {
    GridLevel g = GridLevel::unit(2, 8);
    const OperatorCoeffs c{1.0, 1.0};
    const BoundaryCondition bc = BoundaryCondition::dirichlet();
    Field p(g, Location::Cell), f(g, Location::Cell);
    fill_random(p, 21);
    fill_random(f, 22);
    apply_ghosts(p, bc);
    const Dense A = assemble_operator(p, c, bc);
    const std::vector<double> x = gather(p), fv = gather(f);
    std::vector<double> ref = A.apply(x);
    std::vector<double> scale = A.magnitude(x);
    for (std::size_t n = 0; n < ref.size(); ++n) {
        ref[n] = fv[n] - ref[n];
        scale[n] += std::abs(fv[n]);
    }
    CHECK(mgtest::rel_diff(gather(residual(f, p, c)), ref, scale) <= 1e-14);

    Field zero(g, Location::Cell);
    apply_ghosts(zero, bc);
    Field r0 = residual(Field(g, Location::Cell), zero, c);
    for (double v : r0.values()) CHECK(v == 0.0);

    Field exact_f = apply_operator(p, c);
    Field r1 = residual(exact_f, p, c);
    for (double v : r1.values()) CHECK(v == 0.0);
}

TEST_CASE("operator contract errors") {
    GridLevel g = GridLevel::unit(2, 8);
    Field p(g, Location::Cell);
    CHECK_THROWS_AS(apply_operator(p, {1.0, 1.0}), UnfilledGhosts);
    apply_ghosts(p, BoundaryCondition::dirichlet());
    p(1, 1) = 2.0;
    CHECK_THROWS_AS(apply_operator(p, {1.0, 1.0}), UnfilledGhosts);
    apply_ghosts(p, BoundaryCondition::dirichlet());
    Field u(g, Location::EdgeX);
    CHECK_THROWS_AS(residual(u, p, {1.0, 1.0}), LocationMismatch);
    CHECK_THROWS_AS((OperatorCoeffs{1.0, 0.0}.validate()), InvalidParams);
    CHECK_THROWS_AS((OperatorCoeffs{-1.0, 1.0}.validate()), InvalidParams);
}

TEST_CASE("operator is linear for homogeneous ghosts") {
    GridLevel g = GridLevel::unit(3, 8);
    const BoundaryCondition bc = BoundaryCondition::dirichlet();
    Field p(g, Location::EdgeY), q(g, Location::EdgeY), s(g, Location::EdgeY);
    fill_random(p, 31, -1, 1);
    fill_random(q, 32, -1, 1);
    for (const auto& x : active_points(p))
        s(x[0], x[1], x[2]) = 2.0 * std::as_const(p)(x[0], x[1], x[2]) - 0.5 * std::as_const(q)(x[0], x[1], x[2]);
    for (Field* f : {&p, &q, &s}) apply_ghosts(*f, bc);
    const OperatorCoeffs c{1.0, 0.01};
    Field lp = apply_operator(p, c), lq = apply_operator(q, c), ls = apply_operator(s, c);
    double err = 0.0;
    for (const auto& x : active_points(p))
        err = std::max(err, std::abs(std::as_const(ls)(x[0], x[1], x[2]) -
                                     (2.0 * std::as_const(lp)(x[0], x[1], x[2]) -
                                      0.5 * std::as_const(lq)(x[0], x[1], x[2]))));
    CHECK(err <= 1e-12);
}

TEST_CASE("gradient from cells to edges") {
    GridLevel g = GridLevel::unit(2, 4);
    SUBCASE("constant pressure has zero gradient") {
        Field p(g, Location::Cell);
        p.fill(2.0);
        apply_ghosts(p, BoundaryCondition::neumann());
        StaggeredVector gp = gradient_cc_to_edges(p);
        for (int c = 0; c < 2; ++c)
            for (double v : gp[c].values()) CHECK(v == 0.0);
    }
    SUBCASE("linear pressure has unit x-gradient") {
        GridLevel g3 = GridLevel::make(2, {4, 4, 1}, {0, 0, 0}, {3, 3, 1});
        Field p(g3, Location::Cell);
        mgtest::fill_everywhere(p, [](double x, double, double) { return x; });
        StaggeredVector gp = gradient_cc_to_edges(p);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i <= 4; ++i) CHECK(std::as_const(gp[0])(i, j) == doctest::Approx(1.0).epsilon(1e-14));
        for (int j = 0; j <= 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(std::abs(std::as_const(gp[1])(i, j)) <= 1e-14);
    }
    SUBCASE("random pressure against a difference table") {
        Field p(g, Location::Cell);
        fill_random(p, 41);
        apply_ghosts(p, BoundaryCondition::neumann());
        StaggeredVector gp = gradient_cc_to_edges(p);
        const Field& cp = p;
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i <= 4; ++i) {
                const double left = i == 0 ? cp(0, j) : cp(i - 1, j);
                const double right = i == 4 ? cp(3, j) : cp(i, j);
                CHECK(std::as_const(gp[0])(i, j) == (right - left) / g.h);
            }
        for (int j = 0; j <= 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const double lo = j == 0 ? cp(i, 0) : cp(i, j - 1);
                const double hi = j == 4 ? cp(i, 3) : cp(i, j);
                CHECK(std::as_const(gp[1])(i, j) == (hi - lo) / g.h);
            }
    }
}

TEST_CASE("divergence from edges to cells") {
    GridLevel g = GridLevel::unit(2, 4);
    SUBCASE("solenoidal linear field") {
        StaggeredVector u = StaggeredVector::zeros(g);
        mgtest::fill_everywhere(u[0], [](double x, double, double) { return 0.5 * x; });
        mgtest::fill_everywhere(u[1], [](double, double y, double) { return -0.5 * y; });
        Field d = divergence_edges_to_cc(u);
        for (const auto& q : active_points(d)) CHECK(std::abs(std::as_const(d)(q[0], q[1])) <= 1e-15);
    }
    SUBCASE("zero velocity") {
        Field d = divergence_edges_to_cc(StaggeredVector::zeros(g));
        for (double v : d.values()) CHECK(v == 0.0);
    }
    SUBCASE("random field against the dense divergence matrix") {
        StaggeredVector u = StaggeredVector::zeros(g);
        std::vector<double> x;
        std::vector<std::pair<int, Idx>> cols;
        for (int c = 0; c < 2; ++c) {
            fill_random(u[c], 50 + c, -1, 1);
            for (int j = 0; j < u[c].extent(1); ++j)
                for (int i = 0; i < u[c].extent(0); ++i) {
                    u[c](i, j) = std::sin(1.0 + 3 * i + 7 * j + 11 * c);
                    x.push_back(std::as_const(u[c])(i, j));
                    cols.push_back({c, {i, j, 0}});
                }
        }
        Field d = divergence_edges_to_cc(u);
        Dense B(16, static_cast<int>(x.size()));
        for (std::size_t col = 0; col < cols.size(); ++col) {
            const auto& [c, e] = cols[col];
            // edge e of component c bounds cell e (low face) and cell e - unit_c (high face)
            Idx lo = e, hi = e;
            hi[c] -= 1;
            if (lo[0] < 4 && lo[1] < 4) B(lo[0] + 4 * lo[1], static_cast<int>(col)) -= 1.0 / g.h;
            if (hi[0] >= 0 && hi[1] >= 0) B(hi[0] + 4 * hi[1], static_cast<int>(col)) += 1.0 / g.h;
        }
        CHECK(mgtest::rel_diff(gather(d), B.apply(x), B.magnitude(x)) <= 1e-14);
    }
}

TEST_CASE("integrated divergence") {
    GridLevel g = GridLevel::unit(2, 8);
    SUBCASE("zero velocity in a closed box") { CHECK(integral_divergence(StaggeredVector::zeros(g)) == 0.0); }
    SUBCASE("uniform outflow through one face equals speed times area") {
        GridLevel box = GridLevel::make(2, {8, 4, 1}, {0, 0, 0}, {2, 1, 1});
        StaggeredVector u = StaggeredVector::zeros(box);
        for (int j = 0; j < 4; ++j) u[0](8, j) = 0.75;
        CHECK(integral_divergence(u) == doctest::Approx(0.75 * 1.0).epsilon(1e-14));
        CHECK(boundary_flux(u) == doctest::Approx(0.75).epsilon(1e-14));
    }
    SUBCASE("telescopes to the boundary flux on random fields") {
        for (int dim : {2, 3}) {
            GridLevel gd = GridLevel::unit(dim, 8);
            StaggeredVector u = StaggeredVector::zeros(gd);
            for (int c = 0; c < dim; ++c) {
                for (int k = 0; k < u[c].extent(2); ++k)
                    for (int j = 0; j < u[c].extent(1); ++j)
                        for (int i = 0; i < u[c].extent(0); ++i) u[c](i, j, k) = std::cos(0.3 + i + 2.0 * j + 5.0 * k + c);
            }
            const double a = integral_divergence(u), b = boundary_flux(u);
            double scale = 0.0;
            for (int c = 0; c < dim; ++c)
                for (double v : u[c].values()) scale += std::abs(v);
            CHECK(std::abs(a - b) <= 1e-14 * scale * std::pow(gd.h, dim - 1));
        }
    }
}

TEST_CASE("summation by parts between gradient and divergence") {
    for (int dim : {2, 3}) {
        GridLevel g = GridLevel::unit(dim, 8);
        Field p(g, Location::Cell);
        fill_random(p, 60, -1, 1);
        apply_ghosts(p, BoundaryCondition::neumann());
        StaggeredVector u = StaggeredVector::zeros(g);
        for (int c = 0; c < dim; ++c) {
            fill_random(u[c], 61 + c, -1, 1);
            apply_ghosts(u[c], BoundaryCondition::dirichlet());
        }
        const double hd = std::pow(g.h, dim);
        Field d = divergence_edges_to_cc(u);
        StaggeredVector gp = gradient_cc_to_edges(p);
        double lhs = 0.0, rhs = 0.0, scale = 0.0;
        for (const auto& q : active_points(p)) {
            lhs += std::as_const(p)(q[0], q[1], q[2]) * std::as_const(d)(q[0], q[1], q[2]) * hd;
            scale += std::abs(std::as_const(p)(q[0], q[1], q[2]) * std::as_const(d)(q[0], q[1], q[2]) * hd);
        }
        for (int c = 0; c < dim; ++c)
            for (const auto& q : active_points(u[c]))
                rhs -= std::as_const(gp[c])(q[0], q[1], q[2]) * std::as_const(u[c])(q[0], q[1], q[2]) * hd;
        CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
    }
}

TEST_CASE("WENO3 convection") {
    GridLevel g = GridLevel::unit(2, 16);
    SUBCASE("uniform velocity has zero self-convection") {
        StaggeredVector v = StaggeredVector::zeros(g, 2);
        v[0].fill(0.8);
        v[0].mark_fresh();
        v[1].mark_fresh();
        apply_ghosts(v[1], BoundaryCondition::dirichlet());
        Field cu = weno3_convect(v, 0);
        for (const auto& q : active_points(cu)) CHECK(std::as_const(cu)(q[0], q[1]) == 0.0);
    }
    SUBCASE("linear field advected by a constant speed") {
        StaggeredVector a = StaggeredVector::zeros(g, 2);
        for (double s : {1.5, -1.5}) {
            a[0].fill(s);
            a[0].mark_fresh();
            a[1].fill(0.0);
            a[1].mark_fresh();
            Field q(g, Location::EdgeX, 2);
            mgtest::fill_everywhere(q, [](double x, double, double) { return 3.0 * x - 1.0; });
            Field r = weno3_convect(a, q);
            for (const auto& p : active_points(r)) CHECK(std::as_const(r)(p[0], p[1]) == doctest::Approx(s * 3.0).epsilon(1e-12));
        }
    }
    SUBCASE("third-order self-convergence on a smooth profile") {
        auto err = [](int n) {
            GridLevel gn = GridLevel::unit(2, n);
            StaggeredVector a = StaggeredVector::zeros(gn, 2);
            a[0].fill(1.0);
            a[0].mark_fresh();
            a[1].fill(0.7);
            a[1].mark_fresh();
            Field q(gn, Location::EdgeX, 2);
            mgtest::fill_everywhere(q, [](double x, double y, double) { return std::sin(2 * pi * x) * std::cos(2 * pi * y + 0.3); });
            Field r = weno3_convect(a, q);
            double e = 0.0;
            for (const auto& p : active_points(r)) {
                const double x = q.coord(0, p[0]), y = q.coord(1, p[1]);
                const double ex = 2 * pi * std::cos(2 * pi * x) * std::cos(2 * pi * y + 0.3) -
                                  0.7 * 2 * pi * std::sin(2 * pi * x) * std::sin(2 * pi * y + 0.3);
                e = std::max(e, std::abs(std::as_const(r)(p[0], p[1]) - ex));
            }
            return e;
        };
        const double ratio = err(256) / err(512);
        CHECK(ratio > 7.0);
        CHECK(ratio < 9.5);
    }
    SUBCASE("a step selects the smooth upwind stencil") {
        const double h = 0.1;
        const double d = weno3_derivative(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, h);
        CHECK(std::abs(d - (0.0 - 0.0) / h) <= 1e-9);
        const double m = weno3_derivative(1.0, 1.0, 0.0, 0.0, 0.0, -1.0, h);
        CHECK(std::abs(m - (0.0 - 0.0) / h) <= 1e-9);
        // smooth data keeps the ideal blend of both candidates
        const double lin = weno3_derivative(0.0, 0.1, 0.2, 0.3, 0.4, 1.0, h);
        CHECK(lin == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("explicit transport of a step stays essentially inside the input range") {
        GridLevel g1 = GridLevel::make(2, {64, 4, 1}, {0, 0, 0}, {1, 1.0 / 16, 1});
        GridLevel gp = g1;
        gp.periodic = {true, true, false};
        StaggeredVector a = StaggeredVector::zeros(gp, 2);
        a[0].fill(1.0);
        a[0].mark_fresh();
        a[1].fill(0.0);
        a[1].mark_fresh();
        Field q(gp, Location::Cell, 2);
        mgtest::fill_everywhere(q, [](double x, double, double) { return (x > 0.25 && x < 0.5) ? 1.0 : 0.0; });
        const double dt = 0.2 * gp.h;
        double lo = 0.0, hi = 1.0;
        // SSP Runge-Kutta 3
        const auto stage = [&](const Field& base, const Field& cur, double wb, Field& out) {
            Field r = weno3_convect(a, cur);
            for (const auto& p : active_points(out))
                out(p[0], p[1]) = wb * std::as_const(base)(p[0], p[1]) +
                                  (1 - wb) * (std::as_const(cur)(p[0], p[1]) - dt * std::as_const(r)(p[0], p[1]));
            apply_ghosts(out, BoundaryCondition::periodic_all());
        };
        for (int step = 0; step < 40; ++step) {
            Field q1 = q, q2 = q;
            stage(q, q, 0.0, q1);
            stage(q, q1, 0.75, q2);
            stage(q, q2, 1.0 / 3, q);
            for (const auto& p : active_points(q)) {
                lo = std::min(lo, std::as_const(q)(p[0], p[1]));
                hi = std::max(hi, std::as_const(q)(p[0], p[1]));
            }
        }
        // not strictly bounded, but far below the O(0.1) ringing of linear schemes
        CHECK(lo >= -1e-3);
        CHECK(hi <= 1.0 + 1e-3);
    }
}

} // TEST_SUITE
