#include "mgfas/serial.hpp"

#include "mgfas/errors.hpp"

#include <array>

namespace mgfas::serial {

namespace {

template <class Body>
void for_active(const Field& f, Body&& body) {
    for (int k = f.active_begin(2); k < f.active_end(2); ++k)
        for (int j = f.active_begin(1); j < f.active_end(1); ++j)
            for (int i = f.active_begin(0); i < f.active_end(0); ++i) body(i, j, k);
}

double lap_sum(const Field& p, int i, int j, int k) {
    double sum = (p(i - 1, j, k) + p(i + 1, j, k)) + (p(i, j - 1, k) + p(i, j + 1, k));
    if (p.dim() == 3) sum += p(i, j, k - 1) + p(i, j, k + 1);
    return sum;
}

double op(const Field& p, const OperatorCoeffs& c, int i, int j, int k) {
    const double inv_h2 = 1.0 / (p.h() * p.h());
    const double sum = lap_sum(p, i, j, k);
    return c.a * p(i, j, k) - c.b * ((sum - 2.0 * p.dim() * p(i, j, k)) * inv_h2);
}

void require_fresh(const Field& p) {
    if (!p.ghosts_fresh()) throw UnfilledGhosts("serial kernel: ghost layer is stale");
}

int parity(const Field& f, int axis, int i) { return (f.staggered(axis) ? i : i + 1) & 1; }

std::array<int, 2> tangential(int dim, int t) {
    std::array<int, 2> ab{-1, -1};
    int n = 0;
    for (int a = 0; a < dim; ++a)
        if (a != t) ab[static_cast<std::size_t>(n++)] = a;
    if (dim == 2) ab[1] = ab[0];
    return ab;
}

double at(const Field& f, std::array<int, 3> x) { return f(x[0], x[1], x[2]); }

} // namespace

void apply_operator_into(const Field& p, const OperatorCoeffs& coeffs, Field& out) {
    require_fresh(p);
    out.fill(0.0);
    for_active(p, [&](int i, int j, int k) { out(i, j, k) = op(p, coeffs, i, j, k); });
    out.mark_stale();
}

void residual_into(const Field& f, const Field& p, const OperatorCoeffs& coeffs, Field& r) {
    require_fresh(p);
    r.fill(0.0);
    for_active(p, [&](int i, int j, int k) { r(i, j, k) = f(i, j, k) - op(p, coeffs, i, j, k); });
    r.mark_stale();
}

void add_operator(const Field& p, const OperatorCoeffs& coeffs, Field& acc) {
    require_fresh(p);
    for_active(p, [&](int i, int j, int k) { acc(i, j, k) += op(p, coeffs, i, j, k); });
    acc.mark_stale();
}

void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set) {
    require_fresh(p);
    const int dim = p.dim();
    const double h2 = p.h() * p.h();
    const double denom = coeffs.a * h2 + 2.0 * dim * coeffs.b;
    for (const Parity& par : set.parities) {
        for_active(p, [&](int i, int j, int k) {
            const std::array<int, 3> idx{i, j, k};
            for (int a = 0; a < dim; ++a)
                if (parity(p, a, idx[static_cast<std::size_t>(a)]) != par[static_cast<std::size_t>(a)]) return;
            p(i, j, k) = (h2 * f(i, j, k) + coeffs.b * lap_sum(p, i, j, k)) / denom;
        });
    }
    p.mark_stale();
}

void smooth(const Field& f, Field& p, const OperatorCoeffs& coeffs, const SweepPlan& plan,
            const BoundaryCondition& bc) {
    for (int c : plan.sequence) {
        if (!p.ghosts_fresh()) apply_ghosts(p, bc);
        serial::gs_update(f, p, coeffs, plan.colors[static_cast<std::size_t>(c)]);
    }
    apply_ghosts(p, bc);
}

void restrict_into(const Field& fine, Field& coarse) {
    const int dim = fine.dim();
    if (fine.location() == Location::Cell) {
        for_active(coarse, [&](int i, int j, int k) {
            double s = 0.0;
            bool first = true;
            for (int di = 0; di < 2; ++di)
                for (int dj = 0; dj < 2; ++dj)
                    for (int dk = 0; dk < (dim == 3 ? 2 : 1); ++dk) {
                        const double v = fine(2 * i + di, 2 * j + dj, dim == 3 ? 2 * k + dk : 0);
                        s = first ? v : s + v;
                        first = false;
                    }
            coarse(i, j, k) = s * (dim == 2 ? 0.25 : 0.125);
        });
    } else {
        const int t = staggered_axis(fine.location());
        const auto [ta, tb] = tangential(dim, t);
        for_active(coarse, [&](int i, int j, int k) {
            const std::array<int, 3> base{2 * i, 2 * j, dim == 3 ? 2 * k : 0};
            auto line = [&](std::array<int, 3> m) {
                std::array<int, 3> lo = m, hi = m;
                --lo[static_cast<std::size_t>(t)];
                ++hi[static_cast<std::size_t>(t)];
                return at(fine, lo) + 2.0 * at(fine, m) + at(fine, hi);
            };
            std::array<int, 3> a = base;
            ++a[static_cast<std::size_t>(ta)];
            if (dim == 2) {
                coarse(i, j, k) = (line(base) + line(a)) * 0.125;
            } else {
                std::array<int, 3> b = base, ab = a;
                ++b[static_cast<std::size_t>(tb)];
                ++ab[static_cast<std::size_t>(tb)];
                coarse(i, j, k) = (line(base) + line(a) + line(b) + line(ab)) * 0.0625;
            }
        });
    }
    coarse.mark_stale();
}

void prolong_add(const Field& coarse, Field& fine) {
    const int dim = fine.dim();
    if (fine.location() == Location::Cell) {
        for_active(fine, [&](int i, int j, int k) { fine(i, j, k) += coarse(i / 2, j / 2, dim == 3 ? k / 2 : 0); });
        fine.mark_stale();
        return;
    }
    const int t = staggered_axis(fine.location());
    const auto [ta, tb] = tangential(dim, t);
    // tangential interpolation at coarse face ci for the fine point idx
    auto interp = [&](const std::array<int, 3>& idx, int ci) {
        std::array<int, 3> c{idx[0] / 2, idx[1] / 2, dim == 3 ? idx[2] / 2 : 0};
        c[static_cast<std::size_t>(t)] = ci;
        std::array<int, 3> na = c;
        na[static_cast<std::size_t>(ta)] += idx[static_cast<std::size_t>(ta)] % 2 == 0 ? -1 : 1;
        if (dim == 2) return (3.0 * at(coarse, c) + at(coarse, na)) * 0.25;
        const int db = idx[static_cast<std::size_t>(tb)] % 2 == 0 ? -1 : 1;
        std::array<int, 3> nb = c, nab = na;
        nb[static_cast<std::size_t>(tb)] += db;
        nab[static_cast<std::size_t>(tb)] += db;
        const double near_b = 3.0 * at(coarse, c) + at(coarse, na);
        const double far_b = 3.0 * at(coarse, nb) + at(coarse, nab);
        return (3.0 * near_b + far_b) * 0.0625;
    };
    for_active(fine, [&](int i, int j, int k) {
        const std::array<int, 3> idx{i, j, k};
        const int ft = idx[static_cast<std::size_t>(t)];
        const double v = ft % 2 == 0 ? interp(idx, ft / 2) : (interp(idx, ft / 2) + interp(idx, ft / 2 + 1)) * 0.5;
        fine(i, j, k) += v;
    });
    fine.mark_stale();
}

namespace {

void cycle(const GridHierarchy& levels, std::size_t l, Field& p, const Field& f, const OperatorCoeffs& coeffs,
           const BoundaryCondition& bc, const BoundaryCondition& bc0, const FasParams& params,
           const SweepPlan& plan) {
    for (int m = 0; m < params.s; ++m) serial::smooth(f, p, coeffs, plan, bc);
    if (l + 1 == levels.size()) return;
    const Location loc = p.location();
    const int g = p.ghost();
    Field r(levels[l], loc, g);
    serial::residual_into(f, p, coeffs, r);
    wrap_periodic(r);
    Field p0(levels[l + 1], loc, g), f0(levels[l + 1], loc, g), p0_init(levels[l + 1], loc, g);
    serial::restrict_into(p, p0);
    apply_ghosts(p0, bc);
    copy_values(p0, p0_init);
    serial::restrict_into(r, f0);
    serial::add_operator(p0, coeffs, f0);
    cycle(levels, l + 1, p0, f0, coeffs, bc, bc0, params, plan);
    for (std::size_t q = 0; q < p0.size(); ++q) p0_init.data()[q] = p0.data()[q] - p0_init.data()[q];
    apply_ghosts(p0_init, bc0);
    serial::prolong_add(p0_init, p);
    apply_ghosts(p, bc);
    for (int m = 0; m < params.s; ++m) serial::smooth(f, p, coeffs, plan, bc);
}

} // namespace

void vcycle(const GridHierarchy& levels, Field& p, const Field& f, const OperatorCoeffs& coeffs,
            const BoundaryCondition& bc, const FasParams& params, const SweepPlan& plan) {
    if (!p.ghosts_fresh()) apply_ghosts(p, bc);
    cycle(levels, 0, p, f, coeffs, bc, bc.homogeneous(), params, plan);
}

} // namespace mgfas::serial
