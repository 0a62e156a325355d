#include "mgfas/smoother.hpp"

#include "loops.hpp"
#include "mgfas/errors.hpp"

#include <algorithm>
#include <set>

namespace mgfas {

namespace {

int parity_of(const Field& f, int axis, int i) {
    // cells are numbered from 1 on the 1-based grid, edges from 0
    return (f.staggered(axis) ? i : i + 1) & 1;
}

} // namespace

bool ColorSet::contains(const Field& f, int i, int j, int k) const {
    const std::array<int, 3> idx{i, j, k};
    for (const Parity& p : parities) {
        bool ok = true;
        for (int a = 0; a < f.dim(); ++a) ok = ok && parity_of(f, a, idx[a]) == p[a];
        if (ok) return true;
    }
    return false;
}

std::string to_string(SweepShape s) {
    switch (s) {
    case SweepShape::X: return "X";
    case SweepShape::U: return "U";
    case SweepShape::Z: return "Z";
    case SweepShape::RedBlack: return "RB";
    }
    return "?";
}

std::string to_string(SweepSequence s) {
    return s == SweepSequence::ForwardForward ? "1234-1234" : "1234-4321";
}

SweepShape parse_shape(const std::string& s) {
    if (s == "x" || s == "X") return SweepShape::X;
    if (s == "u" || s == "U") return SweepShape::U;
    if (s == "z" || s == "Z") return SweepShape::Z;
    if (s == "rbgs" || s == "rb" || s == "RB") return SweepShape::RedBlack;
    throw ConfigError("unknown smoother '" + s + "' (expected rbgs, x, u or z)");
}

SweepSequence parse_sequence(const std::string& s) {
    if (s == "ff" || s == "1234-1234") return SweepSequence::ForwardForward;
    if (s == "fb" || s == "1234-4321") return SweepSequence::ForwardBackward;
    throw ConfigError("unknown sequence '" + s + "' (expected ff or fb)");
}

std::vector<Parity> shape_order(SweepShape shape, int dim) {
    constexpr int o = 1, e = 0;
    if (dim == 2) {
        switch (shape) {
        case SweepShape::X: return {{o, e, 0}, {e, o, 0}, {e, e, 0}, {o, o, 0}};
        case SweepShape::Z: return {{o, o, 0}, {o, e, 0}, {e, o, 0}, {e, e, 0}};
        case SweepShape::U: return {{o, o, 0}, {e, o, 0}, {e, e, 0}, {o, e, 0}};
        case SweepShape::RedBlack: break;
        }
    } else {
        switch (shape) {
        case SweepShape::X:
            return {{o, e, e}, {e, o, e}, {e, e, o}, {o, o, o}, {o, e, o}, {e, o, o}, {e, e, e}, {o, o, e}};
        case SweepShape::Z: {
            std::vector<Parity> out;
            for (int a : {o, e})
                for (int b : {o, e})
                    for (int c : {o, e}) out.push_back({a, b, c});
            return out;
        }
        case SweepShape::U: {
            // reflected Gray code starting from (o,o,o); x flips fastest
            std::vector<Parity> out;
            for (int g = 0; g < 8; ++g) {
                const int code = g ^ (g >> 1);
                out.push_back({(code & 1) ? e : o, (code & 2) ? e : o, (code & 4) ? e : o});
            }
            return out;
        }
        case SweepShape::RedBlack: break;
        }
    }
    throw InvalidParams("red-black has no four/eight-color order");
}

SweepPlan SweepPlan::make(SweepShape shape, SweepSequence seq, int dim) {
    if (dim != 2 && dim != 3) throw InvalidParams("sweep plans exist for 2D and 3D only");
    SweepPlan plan;
    plan.shape = shape;
    plan.sequence_kind = seq;
    plan.dim = dim;
    if (shape == SweepShape::RedBlack) {
        ColorSet black, red; // i+j(+k) odd, then even
        const int n = dim == 2 ? 4 : 8;
        for (int c = 0; c < n; ++c) {
            const Parity p{c & 1, (c >> 1) & 1, dim == 3 ? (c >> 2) & 1 : 0};
            ((p[0] + p[1] + p[2]) % 2 == 1 ? black : red).parities.push_back(p);
        }
        plan.colors = {black, red};
    } else {
        for (const Parity& p : shape_order(shape, dim)) plan.colors.push_back(ColorSet{{p}});
    }
    const int n = static_cast<int>(plan.colors.size());
    for (int c = 0; c < n; ++c) plan.sequence.push_back(c);
    for (int c = 0; c < n; ++c) plan.sequence.push_back(seq == SweepSequence::ForwardForward ? c : n - 1 - c);
    plan.validate();
    return plan;
}

SweepPlan SweepPlan::custom(int dim, std::vector<ColorSet> colors, std::vector<int> sequence) {
    SweepPlan plan;
    plan.shape = SweepShape::X;
    plan.dim = dim;
    plan.colors = std::move(colors);
    plan.sequence = std::move(sequence);
    plan.validate();
    return plan;
}

void SweepPlan::validate() const {
    std::set<Parity> seen;
    std::size_t total = 0;
    for (const ColorSet& c : colors) {
        for (Parity p : c.parities) {
            for (int a = dim; a < 3; ++a) p[a] = 0;
            seen.insert(p);
            ++total;
        }
    }
    const std::size_t expected = dim == 2 ? 4 : 8;
    if (seen.size() != expected || total != expected)
        throw InvalidParams("sweep plan colors do not partition the parity classes");
    std::vector<bool> visited(colors.size(), false);
    for (int s : sequence) {
        if (s < 0 || s >= static_cast<int>(colors.size())) throw InvalidParams("sweep plan visits an unknown color");
        visited[static_cast<std::size_t>(s)] = true;
    }
    if (std::find(visited.begin(), visited.end(), false) != visited.end())
        throw InvalidParams("sweep plan never visits some color");
}

SweepPlan default_plan(int dim) { return SweepPlan::make(SweepShape::X, SweepSequence::ForwardForward, dim); }

// ---------------------------------------------------------------------------

namespace {

template <int Dim>
void gs_parity(const Field& f, Field& p, const OperatorCoeffs& c, const Parity& par, Traversal order) {
    const double* fd = f.data();
    double* pd = p.data();
    const std::ptrdiff_t sy = p.stride(1), sz = p.stride(2);
    const double h2 = p.h() * p.h();
    const double b = c.b;
    const double denom = c.a * h2 + 2.0 * Dim * c.b;
    // first active index of matching parity on each axis
    auto first = [&](int axis) {
        int s = p.active_begin(axis);
        if (axis < Dim && parity_of(p, axis, s) != par[axis]) ++s;
        return s;
    };
    const int i0 = first(0), i1 = p.active_end(0);
    const int j0 = first(1), j1 = p.active_end(1);
    const int k0 = first(2), k1 = p.active_end(2);
    const int step_k = Dim == 3 ? 2 : 1;
    const int nj = j1 > j0 ? (j1 - j0 + 1) / 2 : 0;
    const int nk = k1 > k0 ? (k1 - k0 + step_k - 1) / step_k : 0;
#pragma omp parallel for collapse(2) schedule(static)
    for (int kk = 0; kk < nk; ++kk)
        for (int jj = 0; jj < nj; ++jj) {
            const int k = k0 + kk * step_k;
            const int j = j0 + 2 * jj;
            const std::ptrdiff_t row = p.index(0, j, k);
            auto update = [&](int i) {
                const std::ptrdiff_t n = row + i;
                double sum = (pd[n - 1] + pd[n + 1]) + (pd[n - sy] + pd[n + sy]);
                if constexpr (Dim == 3) sum += pd[n - sz] + pd[n + sz];
                pd[n] = (h2 * fd[n] + b * sum) / denom;
            };
            if (order == Traversal::Forward) {
                for (int i = i0; i < i1; i += 2) update(i);
            } else {
                if (i1 > i0) {
                    const int last = i0 + ((i1 - 1 - i0) / 2) * 2;
                    for (int i = last; i >= i0; i -= 2) update(i);
                }
            }
        }
    p.mark_stale();
}

} // namespace

void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set, Traversal order) {
    if (!f.same_layout(p)) throw LocationMismatch("gs_update: f and p differ in layout");
    if (!p.ghosts_fresh()) throw UnfilledGhosts("gs_update: ghost layer is stale");
    for (const Parity& par : set.parities) {
        if (p.dim() == 2)
            gs_parity<2>(f, p, coeffs, par, order);
        else
            gs_parity<3>(f, p, coeffs, par, order);
    }
}

void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set) {
    gs_update(f, p, coeffs, set, Traversal::Forward);
}

void smooth(const Field& f, Field& p, const OperatorCoeffs& coeffs, const SweepPlan& plan,
            const BoundaryCondition& bc) {
    if (plan.dim != p.dim())
        throw PlanDimMismatch("sweep plan for " + std::to_string(plan.dim) + "D applied to a " +
                              std::to_string(p.dim()) + "D field");
    for (int c : plan.sequence) {
        if (!p.ghosts_fresh()) apply_ghosts(p, bc);
        gs_update(f, p, coeffs, plan.colors[static_cast<std::size_t>(c)]);
    }
    apply_ghosts(p, bc);
}

} // namespace mgfas
