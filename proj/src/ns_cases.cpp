#include "mgfas/ns_cases.hpp"

#include "mgfas/errors.hpp"
#include "mgfas/parallel.hpp"
#include "mgfas/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#ifndef MGFAS_DATA_DIR
#define MGFAS_DATA_DIR "data"
#endif

namespace mgfas {

namespace manufactured {

namespace {
constexpr double pi = std::numbers::pi;
}

double u(double x, double y, double t) {
    const double s = std::sin(pi * x);
    return std::sin(t) * s * s * std::sin(2.0 * pi * y);
}

double v(double x, double y, double t) {
    const double s = std::sin(pi * y);
    return -std::sin(t) * std::sin(2.0 * pi * x) * s * s;
}

double p(double, double y, double t) { return std::sin(t) * (std::sin(pi * y) - 2.0 / pi); }

double force(int comp, double x, double y, double t, double re) {
    const double s = std::sin(t), c = std::cos(t);
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    const double A = sx * sx, B = std::sin(2.0 * pi * y);
    const double C = std::sin(2.0 * pi * x), D = sy * sy;
    const double Ax = pi * C, By = 2.0 * pi * std::cos(2.0 * pi * y);
    const double Cx = 2.0 * pi * std::cos(2.0 * pi * x), Dy = pi * B;
    const double Axx = 2.0 * pi * pi * std::cos(2.0 * pi * x), Byy = -4.0 * pi * pi * B;
    const double Cxx = -4.0 * pi * pi * C, Dyy = 2.0 * pi * pi * std::cos(2.0 * pi * y);
    const double uu = s * A * B, vv = -s * C * D;
    if (comp == 0) {
        const double ux = s * Ax * B, uy = s * A * By;
        return c * A * B + uu * ux + vv * uy - (s / re) * (Axx * B + A * Byy);
    }
    const double vx = -s * Cx * D, vy = -s * C * Dy;
    return -c * C * D + uu * vx + vv * vy + (s / re) * (Cxx * D + C * Dyy) + s * pi * std::cos(pi * y);
}

Forcing forcing(double re) {
    return [re](int comp, const std::array<double, 3>& x, double t) { return force(comp, x[0], x[1], t, re); };
}

} // namespace manufactured

std::vector<TemporalRow> temporal_test(int n, int order, ScheduleMode mode, const std::vector<double>& dts,
                                       double re, double t_end, FasParams fas) {
    const GridLevel grid = GridLevel::unit(2, n);
    if (fas.mesh_level == 0) fas.mesh_level = FasParams::full_depth(n);
    std::vector<TemporalRow> rows;
    for (double dt : dts) {
        NSParams params;
        params.re = re;
        params.dt = dt;
        params.t_end = t_end;
        params.dim = 2;
        params.order = order;
        params.mode = mode;
        params.fas = fas;
        params.forcing = manufactured::forcing(re);
        NsSolver ns(grid, params);
        TemporalRow row;
        row.dt = dt;
        row.steps = static_cast<int>(std::lround(t_end / dt));
        for (int s = 0; s < row.steps; ++s) {
            const StepReport rep = ns.step();
            row.converged = row.converged && rep.pressure.converged && rep.momentum[0].converged &&
                            rep.momentum[1].converged;
        }
        const double t = ns.time();
        const auto exact_u = [t](const std::array<double, 3>& x) { return manufactured::u(x[0], x[1], t); };
        const auto exact_v = [t](const std::array<double, 3>& x) { return manufactured::v(x[0], x[1], t); };
        const auto exact_p = [t](const std::array<double, 3>& x) { return manufactured::p(x[0], x[1], t); };
        const Field eu = sample(grid, Location::EdgeX, exact_u, 2);
        const Field ev = sample(grid, Location::EdgeY, exact_v, 2);
        const Field ep = sample(grid, Location::Cell, exact_p, 1);
        const std::array<const Field*, 3> num{&ns.velocity(0), &ns.velocity(1), &ns.pressure()};
        const std::array<const Field*, 3> ex{&eu, &ev, &ep};
        for (int q = 0; q < 3; ++q) {
            Field d(grid, num[q]->location(), num[q]->ghost());
            const double* a = num[q]->data();
            const double* b = ex[q]->data();
            double* o = d.data();
            for (std::size_t m = 0; m < d.size(); ++m) o[m] = a[m] - b[m];
            if (q == 2) shift_active(d, -mean_active(d));
            row.error[q] = norm_l2_scaled(d);
            if (!rows.empty()) row.order[q] = std::log2(rows.back().error[q] / row.error[q]);
        }
        rows.push_back(row);
    }
    return rows;
}

int GhiaData::column(double re) {
    for (int c = 0; c < 3; ++c)
        if (re == reynolds[static_cast<std::size_t>(c)]) return c;
    return -1;
}

std::string default_ghia_path() { return std::string(MGFAS_DATA_DIR) + "/ghia1982.txt"; }

GhiaData load_ghia(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open Ghia reference file '" + path + "'");
    GhiaData d;
    int block = -1; // 0: u table, 1: v table
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "y" || head == "x") {
            block = head == "y" ? 0 : 1;
            continue;
        }
        if (block < 0) throw ConfigError(path + ":" + std::to_string(lineno) + ": data before a block header");
        std::istringstream row(line);
        std::array<double, 4> vals{};
        for (double& v : vals)
            if (!(row >> v)) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 4 numbers");
        std::string extra;
        if (row >> extra) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 4 numbers");
        auto& s = block == 0 ? d.y : d.x;
        auto& cols = block == 0 ? d.u : d.v;
        s.push_back(vals[0]);
        for (std::size_t c = 0; c < 3; ++c) cols[c].push_back(vals[c + 1]);
    }
    if (d.y.empty() || d.x.empty())
        throw ConfigError("Ghia reference file '" + path + "' is missing the u or v block");
    return d;
}

double Profile::at(double x) const {
    if (s.empty()) return 0.0;
    if (x <= s.front()) return value.front();
    if (x >= s.back()) return value.back();
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - s.begin());
    const double w = (x - s[k - 1]) / (s[k] - s[k - 1]);
    return value[k - 1] + w * (value[k] - value[k - 1]);
}

namespace {

int face_at_half(const Field& f, int axis) {
    for (int i = f.active_begin(axis); i < f.active_end(axis); ++i)
        if (std::abs(f.coord(axis, i) - 0.5) < 0.25 * f.h()) return i;
    throw InvalidGrid("no face at the centerline; the cell count must be even");
}

// Samples f along `var` with the staggered axis fixed at its mid face; in 3D
// the remaining axis is averaged over the two cells around 1/2.
Profile line_profile(const Field& f, int var) {
    if (!f.ghosts_fresh()) throw UnfilledGhosts("centerline: stale ghosts");
    const int dim = f.dim();
    const int face = staggered_axis(f.location());
    const int other = dim == 3 ? 3 - face - var : -1;
    std::array<int, 3> idx{0, 0, 0};
    idx[static_cast<std::size_t>(face)] = face_at_half(f, face);
    const int n = f.grid().cells[static_cast<std::size_t>(var)];
    auto value = [&](int m) {
        idx[static_cast<std::size_t>(var)] = m;
        if (other < 0) return f(idx[0], idx[1], idx[2]);
        const int mid = f.grid().cells[static_cast<std::size_t>(other)] / 2;
        idx[static_cast<std::size_t>(other)] = mid - 1;
        const double a = f(idx[0], idx[1], idx[2]);
        idx[static_cast<std::size_t>(other)] = mid;
        return 0.5 * (a + f(idx[0], idx[1], idx[2]));
    };
    Profile p;
    p.s.push_back(0.0);
    p.value.push_back(0.5 * (value(-1) + value(0)));
    for (int m = 0; m < n; ++m) {
        p.s.push_back(f.coord(var, m));
        p.value.push_back(value(m));
    }
    p.s.push_back(1.0);
    p.value.push_back(0.5 * (value(n - 1) + value(n)));
    return p;
}

} // namespace

Profile centerline_u(const NsSolver& ns) { return line_profile(ns.velocity(0), ns.grid().dim - 1); }

Profile centerline_normal(const NsSolver& ns) { return line_profile(ns.velocity(ns.grid().dim - 1), 0); }

double kinetic_energy(const StaggeredVector& u) {
    double e = 0.0;
    for (int c = 0; c < u.dim; ++c) {
        const Field& f = u[c];
        std::vector<double> sq;
        sq.reserve(static_cast<std::size_t>(f.active_count()));
        for (int k = f.active_begin(2); k < f.active_end(2); ++k)
            for (int j = f.active_begin(1); j < f.active_end(1); ++j)
                for (int i = f.active_begin(0); i < f.active_end(0); ++i) sq.push_back(f(i, j, k) * f(i, j, k));
        e += pairwise_sum(sq);
    }
    return e * std::pow(u[0].h(), u.dim);
}

CavityResult run_cavity(const CavityParams& cp, double lid_speed) {
    const GridLevel grid = GridLevel::unit(cp.dim, cp.n);
    NSParams params;
    params.re = cp.re;
    params.dt = cp.dt;
    params.t_end = cp.t_end;
    params.dim = cp.dim;
    params.order = cp.order;
    params.mode = cp.mode;
    params.vel_bc = cavity_bc(cp.dim, lid_speed);
    params.fas = cp.fas;
    if (params.fas.mesh_level == 0) params.fas.mesh_level = FasParams::full_depth(cp.n);
    NsSolver ns(grid, params);

    CavityResult res;
    const double cap = std::floor(cp.t_end / cp.dt + 1e-9);
    const long long limit = cp.max_steps > 0 && cp.max_steps < cap ? cp.max_steps : static_cast<long long>(std::min(cap, 1e15));
    StaggeredVector prev = ns.velocity();
    for (long long s = 0; s < limit; ++s) {
        const StepReport rep = ns.step();
        res.divergence.push_back(rep.divergence_integral);
        res.divergence_norm.push_back(rep.divergence_norm);
        for (int c = 0; c < cp.dim; ++c)
            if (!rep.momentum[static_cast<std::size_t>(c)].converged) ++res.unconverged_solves;
        if (!rep.pressure.converged) ++res.unconverged_solves;
        const StaggeredVector cur = ns.velocity();
        res.kinetic_energy.push_back(kinetic_energy(cur));
        double sq = 0.0;
        for (int c = 0; c < cp.dim; ++c) {
            Field d(grid, cur[c].location(), cur[c].ghost());
            for (std::size_t m = 0; m < d.size(); ++m) d.data()[m] = cur[c].data()[m] - prev[c].data()[m];
            const double nrm = norm_l2_scaled(d);
            sq += nrm * nrm;
        }
        res.change_rate = std::sqrt(sq) / cp.dt;
        prev = cur;
        if (res.change_rate < cp.steady_tol) {
            res.steady = true;
            break;
        }
    }
    res.steps = ns.steps_taken();
    res.time = ns.time();
    res.u_center = centerline_u(ns);
    res.normal_center = centerline_normal(ns);
    return res;
}

GhiaComparison compare_ghia(const CavityResult& r, const GhiaData& data, double re) {
    const int col = GhiaData::column(re);
    if (col < 0) throw InvalidParams("no Ghia reference column for Re = " + std::to_string(re));
    GhiaComparison g;
    const auto c = static_cast<std::size_t>(col);
    for (std::size_t m = 0; m < data.y.size(); ++m) {
        const double d = r.u_center.at(data.y[m]) - data.u[c][m];
        g.u_delta.push_back(d);
        g.max_u = std::max(g.max_u, std::abs(d));
    }
    for (std::size_t m = 0; m < data.x.size(); ++m) {
        const double d = r.normal_center.at(data.x[m]) - data.v[c][m];
        g.v_delta.push_back(d);
        g.max_v = std::max(g.max_v, std::abs(d));
    }
    return g;
}

} // namespace mgfas
