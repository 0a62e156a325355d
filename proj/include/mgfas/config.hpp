#pragma once

// Run configuration for the command-line driver: a flat JSON object
// whose keys mirror the command-line flags. Flags given on the command line
// override the file.

#include "mgfas/fas.hpp"
#include "mgfas/schedule.hpp"
#include "mgfas/smoother.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mgfas {

struct RunConfig {
    std::string experiment;        // poisson | smoother-compare | ns | timing
    std::string mode;              // poisson: asymptotic | algebraic; ns: temporal | cavity | divergence | schedule-audit
    int dim = 2;
    std::vector<int> sizes;
    double dt = 0.0;               // 0: experiment default
    int dt_levels = 5;             // temporal ladder length (dt, dt/2, ...)
    double re = 0.0;               // 0: experiment default
    double t_end = 0.0;            // 0: experiment default
    double steady_tol = 1e-7;
    int max_steps = 0;
    double tol = 1e-9;
    int kmax = 0;                  // 0: experiment default
    int smooth_steps = 2;
    int mesh_level = 0;            // 0: coarsen to 2 cells per axis
    std::string smoother = "x";
    std::string sequence = "ff";
    int order = 1;
    std::string schedule = "efficient";
    int threads = 0;               // 0: OpenMP default
    std::vector<int> scaling_threads;
    int repeats = 10;
    std::uint64_t seed = 42;
    std::string out;
    std::string ghia;
    bool strict = false;

    /// Throws ConfigError on out-of-range values or unknown enumerations.
    void validate() const;

    /// FAS parameters for an n-cell axis; kmax = 0 takes `default_kmax`.
    FasParams fas_params(int n, int default_kmax = 20) const;
    SweepPlan plan() const;
    ScheduleMode schedule_mode() const;

    /// Canonical JSON text of every field.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;
};

/// Overlays the keys of a flat JSON object onto cfg. Unknown keys, nested
/// objects and mistyped values throw ConfigError.
void apply_json(RunConfig& cfg, const std::string& text);
void apply_json_file(RunConfig& cfg, const std::string& path);

} // namespace mgfas
