#pragma once

// Shared helpers for the unit tests: point enumeration, random fields and a
// small dense-matrix type for operator oracles.

#include "mgfas/grid.hpp"
#include "mgfas/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace mgtest {

using mgfas::Field;
using Idx = std::array<int, 3>;

// Active points in storage order (x fastest).
inline std::vector<Idx> active_points(const Field& f) {
    std::vector<Idx> out;
    for (int k = f.active_begin(2); k < f.active_end(2); ++k)
        for (int j = f.active_begin(1); j < f.active_end(1); ++j)
            for (int i = f.active_begin(0); i < f.active_end(0); ++i) out.push_back({i, j, k});
    return out;
}

inline std::map<Idx, int> numbering(const Field& f) {
    std::map<Idx, int> m;
    int n = 0;
    for (const Idx& p : active_points(f)) m[p] = n++;
    return m;
}

inline std::vector<double> gather(const Field& f) {
    std::vector<double> v;
    for (const Idx& p : active_points(f)) v.push_back(f(p[0], p[1], p[2]));
    return v;
}

inline void scatter(const std::vector<double>& v, Field& f) {
    std::size_t n = 0;
    for (const Idx& p : active_points(f)) f(p[0], p[1], p[2]) = v[n++];
}

// Every stored value (ghosts included) from a function of the coordinates.
inline void fill_everywhere(Field& f, const std::function<double(double, double, double)>& fn) {
    const int g = f.ghost();
    const int kg = f.dim() == 3 ? g : 0;
    for (int k = -kg; k < f.extent(2) + kg; ++k)
        for (int j = -g; j < f.extent(1) + g; ++j)
            for (int i = -g; i < f.extent(0) + g; ++i)
                f(i, j, k) = fn(f.coord(0, i), f.coord(1, j), f.dim() == 3 ? f.coord(2, k) : 0.0);
    f.mark_fresh();
}

struct Dense {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Dense(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) y[r] += (*this)(r, c) * x[c];
        return y;
    }
    // Row sums of |A_rc x_c|, the natural scale of each output entry.
    std::vector<double> magnitude(const std::vector<double>& x) const {
        std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) y[r] += std::abs((*this)(r, c) * x[c]);
        return y;
    }
};

// max |a - b| / max scale
inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& scale) {
    double d = 0.0, s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        d = std::max(d, std::abs(a[n] - b[n]));
        s = std::max(s, scale[n]);
    }
    return s > 0.0 ? d / s : d;
}

inline bool bitwise_equal_active(const Field& a, const Field& b) {
    for (const Idx& p : active_points(a))
        if (a(p[0], p[1], p[2]) != b(p[0], p[1], p[2])) return false;
    return true;
}

} // namespace mgtest
