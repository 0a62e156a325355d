#include "mgfas/stencil.hpp"

#include "loops.hpp"
#include "mgfas/errors.hpp"

#include <cmath>

namespace mgfas {

void OperatorCoeffs::validate() const {
    if (!(a >= 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidParams("operator coefficients need a >= 0 and b > 0");
}

StaggeredVector StaggeredVector::zeros(const GridLevel& grid, int ghost) {
    StaggeredVector v;
    v.dim = grid.dim;
    for (int c = 0; c < grid.dim; ++c) v[c] = Field(grid, edge_location(c), ghost);
    return v;
}

namespace {

void require_fresh(const Field& p, const char* who) {
    if (!p.ghosts_fresh()) throw UnfilledGhosts(std::string(who) + ": ghost layer is stale");
}

// mode 0: out = L p; mode 1: out += L p; mode 2: out = f - L p
template <int Dim, int Mode>
void operator_kernel(const Field& p, const OperatorCoeffs& c, const Field* f, Field& out) {
    const double* pd = p.data();
    const double* fd = f ? f->data() : nullptr;
    double* od = out.data();
    const std::ptrdiff_t sy = p.stride(1), sz = p.stride(2);
    const double a = c.a, b = c.b;
    const double inv_h2 = 1.0 / (p.h() * p.h());
    const double diag = 2.0 * Dim;
    const int i0 = p.active_begin(0), i1 = p.active_end(0);
    detail::parallel_rows(p, [&](int j, int k) {
        const std::ptrdiff_t row = p.index(0, j, k);
        for (int i = i0; i < i1; ++i) {
            const std::ptrdiff_t n = row + i;
            double sum = (pd[n - 1] + pd[n + 1]) + (pd[n - sy] + pd[n + sy]);
            if constexpr (Dim == 3) sum += pd[n - sz] + pd[n + sz];
            const double lp = a * pd[n] - b * ((sum - diag * pd[n]) * inv_h2);
            if constexpr (Mode == 0) od[n] = lp;
            if constexpr (Mode == 1) od[n] += lp;
            if constexpr (Mode == 2) od[n] = fd[n] - lp;
        }
    });
    out.mark_stale();
}

template <int Mode>
void dispatch_operator(const Field& p, const OperatorCoeffs& c, const Field* f, Field& out) {
    if (p.dim() == 2)
        operator_kernel<2, Mode>(p, c, f, out);
    else
        operator_kernel<3, Mode>(p, c, f, out);
}

} // namespace

void apply_operator_into(const Field& p, const OperatorCoeffs& coeffs, Field& out) {
    require_fresh(p, "apply_operator");
    if (!p.same_layout(out)) throw LocationMismatch("apply_operator: output layout differs from input");
    out.fill(0.0);
    dispatch_operator<0>(p, coeffs, nullptr, out);
}

Field apply_operator(const Field& p, const OperatorCoeffs& coeffs) {
    Field out(p.grid(), p.location(), p.ghost());
    apply_operator_into(p, coeffs, out);
    return out;
}

void add_operator(const Field& p, const OperatorCoeffs& coeffs, Field& acc) {
    require_fresh(p, "add_operator");
    if (!p.same_layout(acc)) throw LocationMismatch("add_operator: accumulator layout differs from input");
    dispatch_operator<1>(p, coeffs, nullptr, acc);
}

void residual_into(const Field& f, const Field& p, const OperatorCoeffs& coeffs, Field& r) {
    if (!f.same_layout(p) || !r.same_layout(p))
        throw LocationMismatch("residual: f (" + to_string(f.location()) + ") and p (" + to_string(p.location()) +
                               ") differ in layout");
    require_fresh(p, "residual");
    r.fill(0.0);
    dispatch_operator<2>(p, coeffs, &f, r);
}

Field residual(const Field& f, const Field& p, const OperatorCoeffs& coeffs) {
    Field r(p.grid(), p.location(), p.ghost());
    residual_into(f, p, coeffs, r);
    return r;
}

// ---------------------------------------------------------------------------
// Gradient / divergence
// ---------------------------------------------------------------------------

StaggeredVector gradient_cc_to_edges(const Field& p, int ghost) {
    if (p.location() != Location::Cell) throw LocationMismatch("gradient_cc_to_edges expects a cell-centered field");
    require_fresh(p, "gradient_cc_to_edges");
    StaggeredVector g = StaggeredVector::zeros(p.grid(), ghost);
    const double inv_h = 1.0 / p.h();
    for (int c = 0; c < p.dim(); ++c) {
        Field& e = g[c];
        const std::ptrdiff_t ps = p.stride(c);
        const double* pd = p.data();
        double* ed = e.data();
        const int nk = e.extent(2), nj = e.extent(1), ni = e.extent(0);
#pragma omp parallel for collapse(2) schedule(static)
        for (int k = 0; k < nk; ++k)
            for (int j = 0; j < nj; ++j)
                for (int i = 0; i < ni; ++i) {
                    const std::ptrdiff_t pc = p.index(i, j, k);
                    ed[e.index(i, j, k)] = (pd[pc] - pd[pc - ps]) * inv_h;
                }
        e.mark_stale();
    }
    return g;
}

Field divergence_edges_to_cc(const StaggeredVector& u) {
    const GridLevel& grid = u[0].grid();
    Field div(grid, Location::Cell, 1);
    const double inv_h = 1.0 / grid.h;
    const int dim = u.dim;
    double* dd = div.data();
    detail::parallel_rows(div, [&](int j, int k) {
        for (int i = 0; i < div.extent(0); ++i) {
            double s = 0.0;
            for (int c = 0; c < dim; ++c) {
                const Field& e = u[c];
                const std::ptrdiff_t n = e.index(i, j, k);
                s += (e.data()[n + e.stride(c)] - e.data()[n]) * inv_h;
            }
            dd[div.index(i, j, k)] = s;
        }
    });
    div.mark_stale();
    return div;
}

double integral_divergence(const StaggeredVector& u) {
    const Field div = divergence_edges_to_cc(u);
    const double* d = div.data();
    const double sum = detail::reduce_rows(div, [&](int j, int k) {
        const std::ptrdiff_t row = div.index(0, j, k);
        double s = 0.0;
        for (int i = 0; i < div.extent(0); ++i) s += d[row + i];
        return s;
    });
    return std::pow(div.h(), div.dim()) * sum;
}

double boundary_flux(const StaggeredVector& u) {
    double total = 0.0;
    for (int c = 0; c < u.dim; ++c) {
        const Field& e = u[c];
        const int m = e.extent(c) - 1;
        std::array<int, 3> lo{0, 0, 0}, hi{e.extent(0), e.extent(1), e.extent(2)};
        lo[c] = 0;
        hi[c] = 1;
        double s = 0.0;
        for (int k = lo[2]; k < hi[2]; ++k)
            for (int j = lo[1]; j < hi[1]; ++j)
                for (int i = lo[0]; i < hi[0]; ++i) {
                    std::array<int, 3> at{i, j, k};
                    const double inflow = e(at[0], at[1], at[2]);
                    at[c] = m;
                    s += e(at[0], at[1], at[2]) - inflow;
                }
        total += s;
    }
    return std::pow(u[0].h(), u.dim - 1) * total;
}

// ---------------------------------------------------------------------------
// WENO3 convection
// ---------------------------------------------------------------------------

double weno3_derivative(double qm2, double qm1, double q0, double qp1, double qp2, double speed, double h) {
    double d1, d2, d3;
    if (speed >= 0.0) {
        d1 = qm1 - qm2;
        d2 = q0 - qm1;
        d3 = qp1 - q0;
    } else {
        d1 = qp2 - qp1;
        d2 = qp1 - q0;
        d3 = q0 - qm1;
    }
    const double c0 = 0.5 * (3.0 * d2 - d1);
    const double c1 = 0.5 * (d2 + d3);
    const double b0 = (d2 - d1) * (d2 - d1);
    const double b1 = (d3 - d2) * (d3 - d2);
    const double a0 = (1.0 / 3.0) / ((kWenoEpsilon + b0) * (kWenoEpsilon + b0));
    const double a1 = (2.0 / 3.0) / ((kWenoEpsilon + b1) * (kWenoEpsilon + b1));
    return (a0 * c0 + a1 * c1) / ((a0 + a1) * h);
}

double advecting_speed(const StaggeredVector& advecting, int c, Location loc, int i, int j, int k) {
    const int t = staggered_axis(loc);
    const Field& a = advecting[c];
    if (c == t) return a(i, j, k);
    // component c sits on faces along c and on cells along t: average the two
    // faces around the target cell index (along c) and, for edge targets, the
    // two cells around the target face (along t)
    std::array<int, 3> p{i, j, k};
    std::array<int, 3> q = p;
    q[c] += 1;
    if (t < 0) return 0.5 * (a(p[0], p[1], p[2]) + a(q[0], q[1], q[2]));
    std::array<int, 3> pm = p, qm = q;
    pm[t] -= 1;
    qm[t] -= 1;
    return 0.25 * ((a(pm[0], pm[1], pm[2]) + a(p[0], p[1], p[2])) + (a(qm[0], qm[1], qm[2]) + a(q[0], q[1], q[2])));
}

Field weno3_convect(const StaggeredVector& advecting, const Field& advected) {
    if (advected.ghost() < 2) throw InvalidParams("weno3_convect needs two ghost layers on the advected field");
    require_fresh(advected, "weno3_convect");
    Field out(advected.grid(), advected.location(), advected.ghost());
    const double h = advected.h();
    const double* q = advected.data();
    double* od = out.data();
    const int dim = advected.dim();
    const Location loc = advected.location();
    const int i0 = advected.active_begin(0), i1 = advected.active_end(0);
    detail::parallel_rows(advected, [&](int j, int k) {
        for (int i = i0; i < i1; ++i) {
            const std::ptrdiff_t n = advected.index(i, j, k);
            double s = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double speed = advecting_speed(advecting, c, loc, i, j, k);
                const std::ptrdiff_t st = advected.stride(c);
                s += speed * weno3_derivative(q[n - 2 * st], q[n - st], q[n], q[n + st], q[n + 2 * st], speed, h);
            }
            od[n] = s;
        }
    });
    out.mark_stale();
    return out;
}

Field weno3_convect(const StaggeredVector& vel, int target) { return weno3_convect(vel, vel[target]); }

} // namespace mgfas
