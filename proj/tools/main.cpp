// mgfas: command-line driver for the multigrid and Navier-Stokes experiments.

#include "mgfas/commands.hpp"
#include "mgfas/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> mode;
    std::optional<int> dim;
    std::vector<int> sizes;
    std::optional<double> dt;
    std::optional<int> dt_levels;
    std::optional<double> re;
    std::optional<double> t_end;
    std::optional<double> steady_tol;
    std::optional<int> max_steps;
    std::optional<double> tol;
    std::optional<int> kmax;
    std::optional<int> smooth_steps;
    std::optional<int> mesh_level;
    std::optional<std::string> smoother;
    std::optional<std::string> sequence;
    std::optional<int> order;
    std::optional<std::string> schedule;
    std::vector<int> threads;
    std::optional<int> repeats;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> ghia;
    bool strict = false;
};

template <class T>
void set_if(T& dst, const std::optional<T>& src) {
    if (src) dst = *src;
}

void add_flags(CLI::App& app, Flags& f) {
    app.add_option("--config", f.config, "flat JSON config file; flags override its keys");
    app.add_option("--mode", f.mode, "poisson: asymptotic|algebraic; ns: temporal|cavity|divergence|schedule-audit");
    app.add_option("--dim", f.dim, "2 or 3");
    app.add_option("--size", f.sizes, "cells per axis (one or more)");
    app.add_option("--dt", f.dt, "time step (temporal: the largest of the ladder)");
    app.add_option("--dt-levels", f.dt_levels, "temporal ladder length");
    app.add_option("--re", f.re, "Reynolds number");
    app.add_option("--t-end", f.t_end, "final time");
    app.add_option("--steady-tol", f.steady_tol, "cavity steady threshold on ||u^{n+1}-u^n||/dt");
    app.add_option("--max-steps", f.max_steps, "step cap (0: none)");
    app.add_option("--tol", f.tol, "multigrid residual tolerance");
    app.add_option("--kmax", f.kmax, "maximum V-cycles per solve");
    app.add_option("--smooth-steps", f.smooth_steps, "smoothing steps s before and after the correction");
    app.add_option("--mesh-level", f.mesh_level, "number of coarsenings (0: down to 2 cells)");
    app.add_option("--smoother", f.smoother, "rbgs, x, u or z");
    app.add_option("--sequence", f.sequence, "ff (1234-1234) or fb (1234-4321)");
    app.add_option("--order", f.order, "projection scheme order, 1 or 2");
    app.add_option("--schedule", f.schedule, "classical or efficient");
    app.add_option("--threads", f.threads, "thread count; timing accepts a list");
    app.add_option("--repeats", f.repeats, "timed cycles per configuration");
    app.add_option("--seed", f.seed, "seed of the random initial guess");
    app.add_option("--out", f.out, "CSV output path (default: stdout)");
    app.add_option("--ghia", f.ghia, "Ghia reference file");
    app.add_flag("--strict", f.strict, "exit with status 3 when a solve does not converge");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-free FAS multigrid and projection Navier-Stokes experiments"};
    app.require_subcommand(1);
    Flags flags;
    std::string experiment;
    for (const char* name : {"poisson", "smoother-compare", "ns", "timing"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_flags(*sub, flags);
        sub->callback([&experiment, name] { experiment = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mgfas::kExitConfig;
    }

    mgfas::RunConfig cfg;
    try {
        if (flags.config) mgfas::apply_json_file(cfg, *flags.config);
    } catch (const mgfas::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return mgfas::kExitConfig;
    }
    if (!cfg.experiment.empty() && cfg.experiment != experiment)
        std::cerr << "note: config experiment '" << cfg.experiment << "' replaced by subcommand '" << experiment
                  << "'\n";
    cfg.experiment = experiment;
    set_if(cfg.mode, flags.mode);
    set_if(cfg.dim, flags.dim);
    if (!flags.sizes.empty()) cfg.sizes = flags.sizes;
    set_if(cfg.dt, flags.dt);
    set_if(cfg.dt_levels, flags.dt_levels);
    set_if(cfg.re, flags.re);
    set_if(cfg.t_end, flags.t_end);
    set_if(cfg.steady_tol, flags.steady_tol);
    set_if(cfg.max_steps, flags.max_steps);
    set_if(cfg.tol, flags.tol);
    set_if(cfg.kmax, flags.kmax);
    set_if(cfg.smooth_steps, flags.smooth_steps);
    set_if(cfg.mesh_level, flags.mesh_level);
    set_if(cfg.smoother, flags.smoother);
    set_if(cfg.sequence, flags.sequence);
    set_if(cfg.order, flags.order);
    set_if(cfg.schedule, flags.schedule);
    if (!flags.threads.empty()) {
        cfg.threads = flags.threads.front();
        if (experiment == "timing") cfg.scaling_threads = flags.threads;
    }
    set_if(cfg.repeats, flags.repeats);
    set_if(cfg.seed, flags.seed);
    set_if(cfg.out, flags.out);
    set_if(cfg.ghia, flags.ghia);
    if (flags.strict) cfg.strict = true;

    return mgfas::execute(cfg, std::cout, std::cerr);
}
