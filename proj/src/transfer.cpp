#include "mgfas/transfer.hpp"

#include "loops.hpp"
#include "mgfas/errors.hpp"

namespace mgfas {

namespace {

void check_pair(const Field& fine, const Field& coarse, const char* who) {
    if (fine.location() != coarse.location())
        throw LocationMismatch(std::string(who) + ": fine and coarse locations differ");
    for (int a = 0; a < fine.dim(); ++a)
        if (fine.grid().cells[a] != 2 * coarse.grid().cells[a])
            throw InvalidGrid(std::string(who) + ": levels are not 2:1 nested");
}

GridLevel coarse_of(const Field& fine) {
    for (int a = 0; a < fine.dim(); ++a)
        if (fine.grid().cells[a] % 2 != 0) throw NonDivisibleGrid("cannot coarsen an odd axis");
    return fine.grid().coarsened();
}

template <int Dim>
void restrict_cc_kernel(const Field& fine, Field& coarse) {
    const double* fd = fine.data();
    double* cd = coarse.data();
    const std::ptrdiff_t sy = fine.stride(1), sz = fine.stride(2);
    const int ni = coarse.extent(0);
    detail::parallel_rows(coarse, [&](int j, int k) {
        for (int i = 0; i < ni; ++i) {
            const std::ptrdiff_t n = fine.index(2 * i, 2 * j, Dim == 3 ? 2 * k : 0);
            double s;
            if constexpr (Dim == 2) {
                s = (fd[n] + fd[n + sy] + fd[n + 1] + fd[n + 1 + sy]) * 0.25;
            } else {
                s = (fd[n] + fd[n + sz] + fd[n + sy] + fd[n + sy + sz] + fd[n + 1] + fd[n + 1 + sz] + fd[n + 1 + sy] +
                     fd[n + 1 + sy + sz]) *
                    0.125;
            }
            cd[coarse.index(i, j, k)] = s;
        }
    });
    coarse.mark_stale();
}

template <int Dim, bool Add>
void prolong_cc_kernel(const Field& coarse, Field& fine) {
    const double* cd = coarse.data();
    double* fd = fine.data();
    const int ni = fine.extent(0);
    detail::parallel_rows(fine, [&](int j, int k) {
        const std::ptrdiff_t crow = coarse.index(0, j / 2, Dim == 3 ? k / 2 : 0);
        const std::ptrdiff_t frow = fine.index(0, j, k);
        for (int i = 0; i < ni; ++i) {
            if constexpr (Add)
                fd[frow + i] += cd[crow + i / 2];
            else
                fd[frow + i] = cd[crow + i / 2];
        }
    });
    fine.mark_stale();
}

// Edge restriction over coarse active points; t is the staggered axis.
template <int Dim>
void restrict_edge_kernel(const Field& fine, Field& coarse) {
    const int t = staggered_axis(fine.location());
    const double* fd = fine.data();
    double* cd = coarse.data();
    const std::ptrdiff_t st = fine.stride(t);
    // tangential axes
    int ta = -1, tb = -1;
    for (int a = 0; a < Dim; ++a) {
        if (a == t) continue;
        (ta < 0 ? ta : tb) = a;
    }
    const std::ptrdiff_t sa = fine.stride(ta);
    const std::ptrdiff_t sb = Dim == 3 ? fine.stride(tb) : 0;
    const int i0 = coarse.active_begin(0), i1 = coarse.active_end(0);
    detail::parallel_rows(coarse, [&](int j, int k) {
        for (int i = i0; i < i1; ++i) {
            const std::ptrdiff_t n = fine.index(2 * i, 2 * j, Dim == 3 ? 2 * k : 0);
            auto line = [&](std::ptrdiff_t m) { return fd[m - st] + 2.0 * fd[m] + fd[m + st]; };
            double s;
            if constexpr (Dim == 2) {
                s = (line(n) + line(n + sa)) * 0.125;
            } else {
                s = (line(n) + line(n + sa) + line(n + sb) + line(n + sa + sb)) * 0.0625;
            }
            cd[coarse.index(i, j, k)] = s;
        }
    });
    coarse.mark_stale();
}

// Tangential interpolation of the coarse edge field at coarse face index `ci`
// (along t) for fine point (i,j,k) with its tangential coordinates.
template <int Dim>
struct EdgeInterp {
    const Field& coarse;
    int t;
    int ta, tb;

    double at(std::array<int, 3> fine_idx, int ci) const {
        std::array<int, 3> c{};
        std::array<int, 3> nb{};
        for (int a = 0; a < 3; ++a) {
            c[a] = a < Dim ? fine_idx[a] / 2 : 0;
            nb[a] = c[a];
        }
        c[t] = ci;
        nb[t] = ci;
        const int da = (fine_idx[ta] % 2 == 0) ? -1 : 1;
        if constexpr (Dim == 2) {
            std::array<int, 3> na = c;
            na[ta] += da;
            return (3.0 * coarse(c[0], c[1], c[2]) + coarse(na[0], na[1], na[2])) * 0.25;
        } else {
            const int db = (fine_idx[tb] % 2 == 0) ? -1 : 1;
            std::array<int, 3> na = c, nbb = c, nab = c;
            na[ta] += da;
            nbb[tb] += db;
            nab[ta] += da;
            nab[tb] += db;
            const double near_b = 3.0 * coarse(c[0], c[1], c[2]) + coarse(na[0], na[1], na[2]);
            const double far_b = 3.0 * coarse(nbb[0], nbb[1], nbb[2]) + coarse(nab[0], nab[1], nab[2]);
            return (3.0 * near_b + far_b) * 0.0625;
        }
    }
};

template <int Dim, bool Add>
void prolong_edge_kernel(const Field& coarse, Field& fine) {
    const int t = staggered_axis(fine.location());
    int ta = -1, tb = -1;
    for (int a = 0; a < Dim; ++a) {
        if (a == t) continue;
        (ta < 0 ? ta : tb) = a;
    }
    const EdgeInterp<Dim> interp{coarse, t, ta, tb < 0 ? ta : tb};
    double* fd = fine.data();
    const int i0 = fine.active_begin(0), i1 = fine.active_end(0);
    detail::parallel_rows(fine, [&](int j, int k) {
        for (int i = i0; i < i1; ++i) {
            const std::array<int, 3> idx{i, j, k};
            const int ft = idx[t];
            double v;
            if (ft % 2 == 0)
                v = interp.at(idx, ft / 2);
            else
                v = (interp.at(idx, ft / 2) + interp.at(idx, ft / 2 + 1)) * 0.5;
            double& out = fd[fine.index(i, j, k)];
            if constexpr (Add)
                out += v;
            else
                out = v;
        }
    });
    fine.mark_stale();
}

} // namespace

void restrict_cc_into(const Field& fine, Field& coarse) {
    if (fine.location() != Location::Cell) throw LocationMismatch("restrict_cc expects a cell-centered field");
    check_pair(fine, coarse, "restrict_cc");
    if (fine.dim() == 2)
        restrict_cc_kernel<2>(fine, coarse);
    else
        restrict_cc_kernel<3>(fine, coarse);
}

Field restrict_cc(const Field& fine) {
    Field coarse(coarse_of(fine), fine.location(), fine.ghost());
    restrict_cc_into(fine, coarse);
    return coarse;
}

void prolong_add_cc(const Field& coarse, Field& fine) {
    if (coarse.location() != Location::Cell) throw LocationMismatch("prolong_cc expects a cell-centered field");
    check_pair(fine, coarse, "prolong_cc");
    if (fine.dim() == 2)
        prolong_cc_kernel<2, true>(coarse, fine);
    else
        prolong_cc_kernel<3, true>(coarse, fine);
}

Field prolong_cc(const Field& coarse) {
    if (coarse.location() != Location::Cell) throw LocationMismatch("prolong_cc expects a cell-centered field");
    GridLevel g = coarse.grid();
    GridLevel fg = GridLevel::make(g.dim, {g.cells[0] * 2, g.cells[1] * 2, g.dim == 3 ? g.cells[2] * 2 : 1}, g.lo, g.hi);
    fg.level = g.level + 1;
    fg.periodic = g.periodic;
    Field fine(fg, coarse.location(), coarse.ghost());
    if (fine.dim() == 2)
        prolong_cc_kernel<2, false>(coarse, fine);
    else
        prolong_cc_kernel<3, false>(coarse, fine);
    return fine;
}

void restrict_edge_into(const Field& fine, Field& coarse) {
    if (fine.location() == Location::Cell) throw LocationMismatch("restrict_edge expects an edge field");
    check_pair(fine, coarse, "restrict_edge");
    if (fine.dim() == 2)
        restrict_edge_kernel<2>(fine, coarse);
    else
        restrict_edge_kernel<3>(fine, coarse);
}

Field restrict_edge(const Field& fine) {
    Field coarse(coarse_of(fine), fine.location(), fine.ghost());
    restrict_edge_into(fine, coarse);
    return coarse;
}

void prolong_add_edge(const Field& coarse, Field& fine) {
    if (coarse.location() == Location::Cell) throw LocationMismatch("prolong_edge expects an edge field");
    check_pair(fine, coarse, "prolong_edge");
    if (fine.dim() == 2)
        prolong_edge_kernel<2, true>(coarse, fine);
    else
        prolong_edge_kernel<3, true>(coarse, fine);
}

Field prolong_edge(const Field& coarse) {
    if (coarse.location() == Location::Cell) throw LocationMismatch("prolong_edge expects an edge field");
    GridLevel g = coarse.grid();
    GridLevel fg = GridLevel::make(g.dim, {g.cells[0] * 2, g.cells[1] * 2, g.dim == 3 ? g.cells[2] * 2 : 1}, g.lo, g.hi);
    fg.level = g.level + 1;
    fg.periodic = g.periodic;
    Field fine(fg, coarse.location(), coarse.ghost());
    if (fine.dim() == 2)
        prolong_edge_kernel<2, false>(coarse, fine);
    else
        prolong_edge_kernel<3, false>(coarse, fine);
    return fine;
}

void restrict_into(const Field& fine, Field& coarse) {
    if (fine.location() == Location::Cell)
        restrict_cc_into(fine, coarse);
    else
        restrict_edge_into(fine, coarse);
}

void prolong_add(const Field& coarse, Field& fine) {
    if (coarse.location() == Location::Cell)
        prolong_add_cc(coarse, fine);
    else
        prolong_add_edge(coarse, fine);
}

} // namespace mgfas
