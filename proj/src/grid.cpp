#include "mgfas/grid.hpp"

#include "loops.hpp"
#include "mgfas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>
#include <sstream>

namespace mgfas {

std::string to_string(Location loc) {
    switch (loc) {
    case Location::Cell: return "cell";
    case Location::EdgeX: return "edge-x";
    case Location::EdgeY: return "edge-y";
    case Location::EdgeZ: return "edge-z";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// GridLevel
// ---------------------------------------------------------------------------

GridLevel GridLevel::make(int dim, std::array<int, 3> cells, std::array<double, 3> lo,
                          std::array<double, 3> hi) {
    if (dim != 2 && dim != 3) throw InvalidGrid("grid dimension must be 2 or 3");
    GridLevel g;
    g.dim = dim;
    g.cells = cells;
    g.lo = lo;
    g.hi = hi;
    for (int a = dim; a < 3; ++a) {
        g.cells[a] = 1;
        g.lo[a] = 0.0;
        g.hi[a] = 1.0;
    }
    for (int a = 0; a < dim; ++a) {
        if (cells[a] < 1) throw InvalidGrid("cell counts must be positive");
        if (!(hi[a] > lo[a])) throw InvalidGrid("domain must have positive extent on every axis");
    }
    g.h = (hi[0] - lo[0]) / cells[0];
    for (int a = 1; a < dim; ++a) {
        const double ha = (hi[a] - lo[a]) / cells[a];
        if (std::abs(ha - g.h) > 1e-12 * g.h) {
            std::ostringstream os;
            os << "non-uniform spacing: h_x = " << g.h << ", axis " << a << " has " << ha;
            throw InvalidGrid(os.str());
        }
    }
    return g;
}

GridLevel GridLevel::unit(int dim, int n) {
    return make(dim, {n, n, dim == 3 ? n : 1}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
}

GridLevel GridLevel::coarsened() const {
    GridLevel c = *this;
    c.level = level - 1;
    for (int a = 0; a < dim; ++a) c.cells[a] = cells[a] / 2;
    c.h = 2.0 * h;
    return c;
}

long long GridLevel::cell_count() const {
    long long n = 1;
    for (int a = 0; a < dim; ++a) n *= cells[a];
    return n;
}

GridHierarchy make_hierarchy(const GridLevel& fine, int meshLevel) {
    if (meshLevel < 1) throw InvalidParams("meshLevel must be >= 1");
    GridHierarchy levels;
    levels.reserve(static_cast<std::size_t>(meshLevel) + 1);
    GridLevel cur = fine;
    cur.level = meshLevel;
    levels.push_back(cur);
    for (int l = 0; l < meshLevel; ++l) {
        for (int a = 0; a < cur.dim; ++a) {
            if (cur.cells[a] % 2 != 0) {
                std::ostringstream os;
                os << "axis " << a << " has " << fine.cells[a] << " cells; level " << l
                   << " of the coarsening reaches odd size " << cur.cells[a];
                throw NonDivisibleGrid(os.str());
            }
        }
        cur = cur.coarsened();
        levels.push_back(cur);
    }
    for (int a = 0; a < cur.dim; ++a) {
        if (cur.cells[a] % 2 != 0) {
            std::ostringstream os;
            os << "axis " << a << " with " << fine.cells[a] << " cells reaches odd coarsest size "
               << cur.cells[a] << " at meshLevel " << meshLevel;
            throw NonDivisibleGrid(os.str());
        }
    }
    return levels;
}

// ---------------------------------------------------------------------------
// BoundaryCondition
// ---------------------------------------------------------------------------

BoundaryCondition BoundaryCondition::dirichlet(double value) {
    BoundaryCondition bc;
    for (auto& ax : bc.face)
        for (auto& f : ax) f = {BcKind::DirichletReflected, value};
    return bc;
}

BoundaryCondition BoundaryCondition::neumann() {
    BoundaryCondition bc;
    for (auto& ax : bc.face)
        for (auto& f : ax) f = {BcKind::NeumannCopy, 0.0};
    return bc;
}

BoundaryCondition BoundaryCondition::periodic_all() {
    BoundaryCondition bc;
    for (auto& ax : bc.face)
        for (auto& f : ax) f = {BcKind::Periodic, 0.0};
    return bc;
}

BoundaryCondition& BoundaryCondition::set(int axis, int side, FaceBc bc) {
    face.at(static_cast<std::size_t>(axis)).at(static_cast<std::size_t>(side)) = bc;
    return *this;
}

BoundaryCondition& BoundaryCondition::set_axis(int axis, FaceBc bc) {
    set(axis, 0, bc);
    return set(axis, 1, bc);
}

void BoundaryCondition::validate(const GridLevel& grid) const {
    for (int a = 0; a < grid.dim; ++a) {
        const bool lo = face[a][0].kind == BcKind::Periodic;
        const bool hi = face[a][1].kind == BcKind::Periodic;
        if (lo != hi) throw InvalidBoundary("periodic boundary set on only one face of axis " + std::to_string(a));
        if (lo != grid.periodic[a])
            throw InvalidBoundary("periodic boundary on axis " + std::to_string(a) +
                                  " does not match the grid topology");
    }
}

bool BoundaryCondition::any_dirichlet(int dim) const {
    for (int a = 0; a < dim; ++a)
        for (const auto& f : face[a])
            if (f.kind == BcKind::DirichletReflected) return true;
    return false;
}

BoundaryCondition BoundaryCondition::homogeneous() const {
    BoundaryCondition bc = *this;
    for (auto& ax : bc.face)
        for (auto& f : ax) f.value = 0.0;
    return bc;
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

Field::Field(const GridLevel& grid, Location loc, int ghost) : grid_(grid), loc_(loc), ghost_(ghost) {
    if (ghost < 1) throw InvalidGrid("fields need at least one ghost layer");
    const int sa = staggered_axis(loc);
    if (sa >= grid.dim) throw LocationMismatch(to_string(loc) + " field on a " + std::to_string(grid.dim) + "D grid");
    for (int a = 0; a < 3; ++a) {
        if (a >= grid.dim) {
            n_[a] = 1;
            pad_[a] = 0;
            ab_[a] = 0;
            ae_[a] = 1;
            continue;
        }
        const int m = grid.cells[a];
        pad_[a] = ghost;
        if (a == sa) {
            n_[a] = m + 1;
            ab_[a] = grid.periodic[a] ? 0 : 1;
            ae_[a] = m;
        } else {
            n_[a] = m;
            ab_[a] = 0;
            ae_[a] = m;
        }
    }
    stride_[0] = 1;
    stride_[1] = n_[0] + 2 * pad_[0];
    stride_[2] = stride_[1] * (n_[1] + 2 * pad_[1]);
    const std::size_t total = static_cast<std::size_t>(stride_[2]) * static_cast<std::size_t>(n_[2] + 2 * pad_[2]);
    data_.assign(total, 0.0);
}

long long Field::active_count() const {
    long long n = 1;
    for (int a = 0; a < 3; ++a) n *= (ae_[a] - ab_[a]);
    return n;
}

double Field::coord(int axis, int i) const {
    return staggered(axis) ? grid_.lo[axis] + i * grid_.h : grid_.lo[axis] + (i + 0.5) * grid_.h;
}

void Field::fill(double v) {
    std::fill(data_.begin(), data_.end(), v);
    fresh_ = false;
}

bool Field::same_layout(const Field& other) const {
    return loc_ == other.loc_ && ghost_ == other.ghost_ && n_ == other.n_ && grid_.h == other.grid_.h &&
           grid_.dim == other.grid_.dim;
}

// ---------------------------------------------------------------------------
// Ghost fill
// ---------------------------------------------------------------------------

namespace {

// Calls body(base) for every combination of the two axes other than `axis`,
// where base is the flat index with the `axis` coordinate set to 0. Axes below
// `axis` run over native points, axes above over the full padded range.
template <class Body>
void for_face_lines(Field& f, int axis, Body&& body) {
    std::array<int, 3> b0{}, b1{};
    for (int a = 0; a < 3; ++a) {
        if (a >= f.dim()) {
            b0[a] = 0;
            b1[a] = 1;
        } else if (a < axis) {
            b0[a] = 0;
            b1[a] = f.extent(a);
        } else {
            b0[a] = -f.ghost();
            b1[a] = f.extent(a) + f.ghost();
        }
    }
    b0[axis] = 0;
    b1[axis] = 1;
    for (int k = b0[2]; k < b1[2]; ++k)
        for (int j = b0[1]; j < b1[1]; ++j)
            for (int i = b0[0]; i < b1[0]; ++i) body(f.index(i, j, k));
}

void fill_axis(Field& f, int axis, const std::array<FaceBc, 2>& bc, bool periodic_only) {
    double* d = f.data();
    const std::ptrdiff_t s = f.stride(axis);
    const int g = f.ghost();
    if (f.staggered(axis)) {
        const int m = f.extent(axis) - 1; // boundary points at 0 and m
        for_face_lines(f, axis, [&](std::ptrdiff_t base) {
            auto at = [&](int i) -> double& { return d[base + i * s]; };
            if (bc[0].kind == BcKind::Periodic) {
                at(m) = at(0);
                for (int l = 1; l <= g; ++l) {
                    at(-l) = at(m - l);
                    at(m + l) = at(l);
                }
                return;
            }
            if (periodic_only) return;
            for (int side = 0; side < 2; ++side) {
                const FaceBc& fb = bc[side];
                const int b = side == 0 ? 0 : m;
                const int dir = side == 0 ? -1 : 1;
                if (fb.kind == BcKind::DirichletReflected) {
                    at(b) = fb.value;
                    for (int l = 1; l <= g; ++l) at(b + dir * l) = 2.0 * fb.value - at(b - dir * l);
                } else {
                    at(b) = at(b - dir);
                    for (int l = 1; l <= g; ++l) at(b + dir * l) = at(b - dir * l);
                }
            }
        });
    } else {
        const int m = f.extent(axis);
        for_face_lines(f, axis, [&](std::ptrdiff_t base) {
            auto at = [&](int i) -> double& { return d[base + i * s]; };
            if (bc[0].kind == BcKind::Periodic) {
                for (int l = 1; l <= g; ++l) {
                    at(-l) = at(m - l);
                    at(m - 1 + l) = at(l - 1);
                }
                return;
            }
            if (periodic_only) return;
            for (int l = 1; l <= g; ++l) {
                const double lo_in = at(l - 1);
                at(-l) = bc[0].kind == BcKind::DirichletReflected ? 2.0 * bc[0].value - lo_in : lo_in;
                const double hi_in = at(m - l);
                at(m - 1 + l) = bc[1].kind == BcKind::DirichletReflected ? 2.0 * bc[1].value - hi_in : hi_in;
            }
        });
    }
}

void fill_all(Field& f, const BoundaryCondition& bc, bool periodic_only) {
    for (int a = f.dim() - 1; a >= 0; --a) fill_axis(f, a, bc.face[a], periodic_only);
}

} // namespace

void apply_ghost_cell(Field& field, const BoundaryCondition& bc) {
    if (field.location() != Location::Cell)
        throw LocationMismatch("apply_ghost_cell on a " + to_string(field.location()) + " field");
    bc.validate(field.grid());
    fill_all(field, bc, false);
    field.mark_fresh();
}

void apply_ghost_edge(Field& field, const BoundaryCondition& bc) {
    if (field.location() == Location::Cell) throw LocationMismatch("apply_ghost_edge on a cell-centered field");
    bc.validate(field.grid());
    fill_all(field, bc, false);
    field.mark_fresh();
}

void apply_ghosts(Field& field, const BoundaryCondition& bc) {
    if (field.location() == Location::Cell)
        apply_ghost_cell(field, bc);
    else
        apply_ghost_edge(field, bc);
}

void wrap_periodic(Field& field) {
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    bool any = false;
    for (int a = 0; a < field.dim(); ++a) {
        if (field.grid().periodic[a]) {
            bc.set_axis(a, {BcKind::Periodic, 0.0});
            any = true;
        }
    }
    if (any) fill_all(field, bc, true);
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

double norm_l2_scaled(const Field& field) {
    const double* d = field.data();
    const int i0 = field.active_begin(0), i1 = field.active_end(0);
    const double sum = detail::reduce_rows(field, [&](int j, int k) {
        const std::ptrdiff_t row = field.index(0, j, k);
        double s = 0.0;
        for (int i = i0; i < i1; ++i) s += d[row + i] * d[row + i];
        return s;
    });
    return std::pow(field.h(), 0.5 * field.dim()) * std::sqrt(sum);
}

double mean_active(const Field& field) {
    const double* d = field.data();
    const int i0 = field.active_begin(0), i1 = field.active_end(0);
    const double sum = detail::reduce_rows(field, [&](int j, int k) {
        const std::ptrdiff_t row = field.index(0, j, k);
        double s = 0.0;
        for (int i = i0; i < i1; ++i) s += d[row + i];
        return s;
    });
    return sum / static_cast<double>(field.active_count());
}

void shift_active(Field& field, double c) {
    double* d = field.data();
    const int i0 = field.active_begin(0), i1 = field.active_end(0);
    detail::parallel_rows(field, [&](int j, int k) {
        const std::ptrdiff_t row = field.index(0, j, k);
        for (int i = i0; i < i1; ++i) d[row + i] += c;
    });
    field.mark_stale();
}

void copy_values(const Field& src, Field& dst) {
    if (!src.same_layout(dst)) throw LocationMismatch("copy_values between fields of different layout");
    std::copy(src.values().begin(), src.values().end(), dst.values().begin());
    if (src.ghosts_fresh())
        dst.mark_fresh();
    else
        dst.mark_stale();
}

double max_abs_diff(const Field& a, const Field& b) {
    if (!a.same_layout(b)) throw LocationMismatch("max_abs_diff between fields of different layout");
    double m = 0.0;
    for (int k = a.active_begin(2); k < a.active_end(2); ++k)
        for (int j = a.active_begin(1); j < a.active_end(1); ++j)
            for (int i = a.active_begin(0); i < a.active_end(0); ++i)
                m = std::max(m, std::abs(a(i, j, k) - b(i, j, k)));
    return m;
}

// ---------------------------------------------------------------------------
// Threads
// ---------------------------------------------------------------------------

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int n) {
    if (n >= 1) omp_set_num_threads(n);
}

double pairwise_sum(const std::vector<double>& parts) {
    if (parts.empty()) return 0.0;
    std::vector<double> buf(parts);
    std::size_t n = buf.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2 == 1) buf[half] = buf[n - 1];
        n = half + (n % 2);
    }
    return buf[0];
}

} // namespace mgfas
