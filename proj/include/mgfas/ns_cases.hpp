#pragma once

// Navier-Stokes test problems: the manufactured solution used for
// temporal convergence, and the lid-driven cavity with the Ghia et al. (1982)
// centerline reference.

#include "mgfas/ns.hpp"

#include <array>
#include <string>
#include <vector>

namespace mgfas {

/// Manufactured solution on the unit square:
///   u =  sin t sin^2(pi x) sin(2 pi y)
///   v = -sin t sin(2 pi x) sin^2(pi y)
///   p =  sin t (sin(pi y) - 2/pi)
/// Velocity vanishes on the walls and p has zero mean.
namespace manufactured {
double u(double x, double y, double t);
double v(double x, double y, double t);
double p(double x, double y, double t);
/// u_t + (u . grad) u - lap u / Re + grad p, component comp, evaluated analytically.
double force(int comp, double x, double y, double t, double re);
Forcing forcing(double re);
} // namespace manufactured

struct TemporalRow {
    double dt = 0.0;
    int steps = 0;
    std::array<double, 3> error{}; // u, v, p at t_end, h||.||
    std::array<double, 3> order{}; // log2 against the previous row; 0 for the first
    bool converged = true;         // every inner solve reached tol
};

/// Integrates the manufactured problem from t = 0 to t_end for each dt.
/// fas.mesh_level = 0 selects the full depth.
std::vector<TemporalRow> temporal_test(int n, int order, ScheduleMode mode, const std::vector<double>& dts,
                                       double re = 10.0, double t_end = 1.0,
                                       FasParams fas = {1e-9, 20, 2, 0});

/// Centerline reference values.
struct GhiaData {
    std::vector<double> y;                      // u table abscissa
    std::array<std::vector<double>, 3> u;       // Re 100, 400, 1000
    std::vector<double> x;                      // v table abscissa
    std::array<std::vector<double>, 3> v;
    static constexpr std::array<int, 3> reynolds{100, 400, 1000};

    /// Column index for Re, or -1.
    static int column(double re);
};

/// Default location of the reference file, relative to the source tree.
std::string default_ghia_path();

/// Parses the reference file; throws ConfigError naming the path on failure.
GhiaData load_ghia(const std::string& path);

/// Polyline (coordinate, value) including both wall endpoints.
struct Profile {
    std::vector<double> s;
    std::vector<double> value;
    /// Linear interpolation; clamps outside the sampled range.
    double at(double x) const;
};

/// u along the line x = 1/2 (and y = 1/2 in 3D) as a function of the last coordinate.
Profile centerline_u(const NsSolver& ns);
/// The lid-normal velocity along the x line through the center.
Profile centerline_normal(const NsSolver& ns);

struct CavityParams {
    int n = 128;
    int dim = 2;
    double re = 100.0;
    double dt = 2e-3;
    double t_end = 50.0;
    double steady_tol = 1e-7;
    int max_steps = 0; // 0: bounded by t_end only
    int order = 1;
    ScheduleMode mode = ScheduleMode::Efficient;
    FasParams fas{1e-9, 20, 2, 0}; // mesh_level = 0 selects the full depth
};

struct CavityResult {
    int steps = 0;
    double time = 0.0;
    bool steady = false;
    double change_rate = 0.0;              // last ||u^{n+1} - u^n|| / dt
    std::vector<double> divergence;        // integral of div u per step
    std::vector<double> divergence_norm;   // h^{d/2}||div u|| per step
    std::vector<double> kinetic_energy;    // sum (u^2 + v^2 [+ w^2]) h^d per step
    int unconverged_solves = 0;
    Profile u_center;
    Profile normal_center;
};

/// Integrates from rest until ||u^{n+1} - u^n||/dt < steady_tol, t_end or max_steps.
CavityResult run_cavity(const CavityParams& params, double lid_speed = 1.0);

struct GhiaComparison {
    double max_u = 0.0;
    double max_v = 0.0;
    std::vector<double> u_delta; // at GhiaData::y
    std::vector<double> v_delta; // at GhiaData::x
};

/// Compares centerline profiles with the column for `re`; throws InvalidParams for an unknown Re.
GhiaComparison compare_ghia(const CavityResult& r, const GhiaData& data, double re);

/// Sum of squared velocities times h^d over active points.
double kinetic_energy(const StaggeredVector& u);

} // namespace mgfas
