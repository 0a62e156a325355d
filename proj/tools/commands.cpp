#include "mgfas/commands.hpp"

#include "mgfas/errors.hpp"
#include "mgfas/ns_cases.hpp"
#include "mgfas/parallel.hpp"
#include "mgfas/poisson.hpp"
#include "mgfas/rng.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mgfas {

namespace {

std::vector<int> sizes_or(const RunConfig& cfg, std::vector<int> fallback) {
    return cfg.sizes.empty() ? fallback : cfg.sizes;
}

double or_default(double v, double fallback) { return v > 0.0 ? v : fallback; }

std::string fmt(double v) { return format_number(v); }

} // namespace

CommandResult cmd_poisson(const RunConfig& cfg) {
    const std::string mode = cfg.mode.empty() ? "asymptotic" : cfg.mode;
    const SweepPlan plan = cfg.plan();
    if (mode == "asymptotic") {
        const std::vector<int> sizes =
            sizes_or(cfg, cfg.dim == 2 ? std::vector<int>{128, 256, 512, 1024} : std::vector<int>{32, 64, 128});
        CommandResult res{CsvWriter({"n", "error", "order", "iterations", "residual", "converged"})};
        std::ostringstream sum;
        for (const AsymptoticRow& r : asymptotic_test(cfg.dim, sizes, cfg.fas_params(sizes.front()), plan)) {
            res.csv.row({static_cast<long long>(r.n), r.error, r.order, static_cast<long long>(r.iterations),
                         r.residual, std::string(r.converged ? "1" : "0")});
            res.converged = res.converged && r.converged;
            sum << "n=" << r.n << " error=" << fmt(r.error) << " order=" << fmt(r.order) << " cycles=" << r.iterations
                << '\n';
        }
        res.summary = sum.str();
        return res;
    }
    if (mode == "algebraic") {
        const std::vector<int> sizes = sizes_or(cfg, cfg.dim == 2 ? std::vector<int>{256, 512, 1024}
                                                                  : std::vector<int>{32, 64, 128});
        CommandResult res{CsvWriter({"n", "cycle", "residual", "error"})};
        std::ostringstream sum;
        for (int n : sizes) {
            const AlgebraicRun run = algebraic_test(cfg.dim, n, cfg.fas_params(n), plan, cfg.seed, false);
            for (std::size_t k = 0; k < run.errors.size(); ++k)
                res.csv.row({static_cast<long long>(n), static_cast<long long>(k + 1),
                             run.report.residual_history[k], run.errors[k]});
            res.converged = res.converged && run.report.converged;
            sum << "n=" << n << " cycles=" << run.report.iterations
                << (run.report.converged ? "" : " (not converged)") << '\n';
        }
        res.summary = sum.str();
        return res;
    }
    throw ConfigError("unknown poisson mode '" + mode + "' (expected asymptotic or algebraic)");
}

CommandResult cmd_smoother_compare(const RunConfig& cfg) {
    if (cfg.sizes.size() > 1) throw ConfigError("smoother-compare takes a single size");
    const int n = cfg.sizes.empty() ? (cfg.dim == 2 ? 512 : 64) : cfg.sizes.front();
    CommandResult res{CsvWriter({"shape", "sequence", "iterations", "final_residual", "converged"})};
    std::ostringstream sum;
    for (const OrderingRow& r : compare_orderings(cfg.dim, n, cfg.fas_params(n, 100), cfg.seed)) {
        res.csv.row({to_string(r.shape), std::string(r.sequence == SweepSequence::ForwardForward ? "ff" : "fb"),
                     static_cast<long long>(r.iterations), r.final_residual, std::string(r.converged ? "1" : "0")});
        res.converged = res.converged && r.converged;
        sum << to_string(r.shape) << '/' << to_string(r.sequence) << ": " << r.iterations << " cycles\n";
    }
    res.summary = sum.str();
    return res;
}

namespace {

CommandResult ns_temporal(const RunConfig& cfg) {
    if (cfg.dim != 2) throw ConfigError("the temporal test is two-dimensional");
    const int n = cfg.sizes.empty() ? 512 : cfg.sizes.front();
    std::vector<double> dts{or_default(cfg.dt, 0.1)};
    for (int k = 1; k < cfg.dt_levels; ++k) dts.push_back(dts.back() / 2.0);
    const auto rows = temporal_test(n, cfg.order, cfg.schedule_mode(), dts, or_default(cfg.re, 10.0),
                                    or_default(cfg.t_end, 1.0), cfg.fas_params(n));
    CommandResult res{CsvWriter({"dt", "steps", "error_u", "error_v", "error_p", "order_u", "order_v", "order_p",
                                 "converged"})};
    std::ostringstream sum;
    for (const TemporalRow& r : rows) {
        res.csv.row({r.dt, static_cast<long long>(r.steps), r.error[0], r.error[1], r.error[2], r.order[0],
                     r.order[1], r.order[2], std::string(r.converged ? "1" : "0")});
        res.converged = res.converged && r.converged;
        sum << "dt=" << fmt(r.dt) << " orders u=" << fmt(r.order[0]) << " v=" << fmt(r.order[1])
            << " p=" << fmt(r.order[2]) << '\n';
    }
    res.summary = sum.str();
    return res;
}

CavityParams cavity_params(const RunConfig& cfg, int default_n, double default_t_end) {
    CavityParams cp;
    cp.n = cfg.sizes.empty() ? default_n : cfg.sizes.front();
    cp.dim = cfg.dim;
    cp.re = or_default(cfg.re, 100.0);
    cp.dt = or_default(cfg.dt, 0.5 / cp.n);
    cp.t_end = or_default(cfg.t_end, default_t_end);
    cp.steady_tol = cfg.steady_tol;
    cp.max_steps = cfg.max_steps;
    cp.order = cfg.order;
    cp.mode = cfg.schedule_mode();
    cp.fas = cfg.fas_params(cp.n);
    return cp;
}

CommandResult ns_cavity(const RunConfig& cfg) {
    const std::string path = cfg.ghia.empty() ? default_ghia_path() : cfg.ghia;
    const GhiaData ghia = load_ghia(path);
    const CavityParams cp = cavity_params(cfg, 128, 60.0);
    const CavityResult r = run_cavity(cp);
    const int col = GhiaData::column(cp.re);
    CommandResult res{CsvWriter({"profile", "coord", "computed", "reference", "delta"})};
    const double nan = std::nan("");
    double max_u = 0.0, max_v = 0.0;
    for (std::size_t m = 0; m < ghia.y.size(); ++m) {
        const double c = r.u_center.at(ghia.y[m]);
        const double ref = col < 0 ? nan : ghia.u[static_cast<std::size_t>(col)][m];
        if (col >= 0) max_u = std::max(max_u, std::abs(c - ref));
        res.csv.row({std::string("u"), ghia.y[m], c, ref, c - ref});
    }
    for (std::size_t m = 0; m < ghia.x.size(); ++m) {
        const double c = r.normal_center.at(ghia.x[m]);
        const double ref = col < 0 ? nan : ghia.v[static_cast<std::size_t>(col)][m];
        if (col >= 0) max_v = std::max(max_v, std::abs(c - ref));
        res.csv.row({std::string("v"), ghia.x[m], c, ref, c - ref});
    }
    res.converged = r.steady && r.unconverged_solves == 0;
    std::ostringstream sum;
    sum << "steps=" << r.steps << " t=" << fmt(r.time) << " steady=" << (r.steady ? "yes" : "no")
        << " change_rate=" << fmt(r.change_rate) << " unconverged_solves=" << r.unconverged_solves << '\n';
    if (col >= 0) sum << "max |u - ghia| = " << fmt(max_u) << ", max |v - ghia| = " << fmt(max_v) << '\n';
    res.summary = sum.str();
    return res;
}

CommandResult ns_divergence(const RunConfig& cfg) {
    CavityParams cp = cavity_params(cfg, 128, 1e9);
    if (cfg.max_steps == 0) cp.max_steps = 500;
    cp.steady_tol = 0.0; // run every requested step
    const CavityResult r = run_cavity(cp);
    CommandResult res{CsvWriter({"step", "time", "divergence_integral", "divergence_norm", "kinetic_energy"})};
    double worst = 0.0;
    for (std::size_t s = 0; s < r.divergence.size(); ++s) {
        res.csv.row({static_cast<long long>(s + 1), static_cast<double>(s + 1) * cp.dt, r.divergence[s],
                     r.divergence_norm[s], r.kinetic_energy[s]});
        worst = std::max(worst, std::abs(r.divergence[s]));
    }
    res.converged = r.unconverged_solves == 0;
    res.summary = "steps=" + std::to_string(r.steps) + " max |integral div u| = " + fmt(worst) + "\n";
    return res;
}

CommandResult ns_schedule_audit(const RunConfig&) {
    CommandResult res{CsvWriter({"schedule", "order", "dim", "slots", "expected_slots", "status",
                                 "same_dataflow_as_classical", "violations"})};
    std::ostringstream sum;
    for (int dim : {3, 2})
        for (int order : {1, 2})
            for (ScheduleMode mode : {ScheduleMode::Classical, ScheduleMode::Efficient}) {
                const SlotSchedule s = make_schedule(mode, order, dim);
                const auto v = validate_schedule(s);
                const bool same = same_dataflow(s, make_schedule(ScheduleMode::Classical, order, dim));
                std::string text;
                for (const Violation& x : v) text += (text.empty() ? "" : "; ") + x.step + ": " + x.message;
                res.csv.row({to_string(mode), static_cast<long long>(order), static_cast<long long>(dim),
                             static_cast<long long>(s.slots.size()),
                             static_cast<long long>(expected_slots(mode, order, dim)),
                             std::string(v.empty() ? "ok" : "violations"), std::string(same ? "1" : "0"),
                             text});
                res.converged = res.converged && v.empty() && same;
                sum << to_string(mode) << " order " << order << ' ' << dim << "D: " << s.slots.size() << " slots, "
                    << (v.empty() ? "ok" : "violations") << '\n';
            }
    res.summary = sum.str();
    return res;
}

} // namespace

CommandResult cmd_ns(const RunConfig& cfg) {
    const std::string mode = cfg.mode.empty() ? "cavity" : cfg.mode;
    if (mode == "temporal") return ns_temporal(cfg);
    if (mode == "cavity") return ns_cavity(cfg);
    if (mode == "divergence") return ns_divergence(cfg);
    if (mode == "schedule-audit") return ns_schedule_audit(cfg);
    throw ConfigError("unknown ns mode '" + mode + "' (expected temporal, cavity, divergence or schedule-audit)");
}

CommandResult cmd_timing(const RunConfig& cfg) {
    const std::vector<int> sizes =
        sizes_or(cfg, cfg.dim == 2 ? std::vector<int>{256, 512, 1024} : std::vector<int>{32, 64, 128});
    std::vector<int> threads = cfg.scaling_threads;
    if (threads.empty()) threads.push_back(thread_count());
    const int saved = thread_count();
    CommandResult res{CsvWriter({"n", "points", "threads", "mean_seconds", "stddev_seconds", "seconds_per_point",
                                 "speedup"})};
    std::ostringstream sum;
    const SweepPlan plan = cfg.plan();
    for (int n : sizes) {
        const GridLevel grid = GridLevel::unit(cfg.dim, n);
        const FasParams params = cfg.fas_params(n);
        const BoundaryCondition bc = benchmark_bc();
        const int dim = cfg.dim;
        const Field f = sample(grid, Location::Cell, [dim](const std::array<double, 3>& x) {
            return benchmark_rhs(x, dim);
        });
        double base = 0.0;
        for (int t : threads) {
            set_thread_count(t);
            FasSolver solver(grid, Location::Cell, OperatorCoeffs{1.0, 1.0}, bc, params, plan);
            Field p(grid, Location::Cell);
            fill_random(p, cfg.seed);
            solver.vcycle(p, f); // warm-up
            std::vector<double> times;
            for (int r = 0; r < cfg.repeats; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                solver.vcycle(p, f);
                const auto t1 = std::chrono::steady_clock::now();
                times.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            const double mean = std::accumulate(times.begin(), times.end(), 0.0) / times.size();
            double var = 0.0;
            for (double x : times) var += (x - mean) * (x - mean);
            const double sd = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
            if (base == 0.0) base = mean;
            const long long points = grid.cell_count();
            res.csv.row({static_cast<long long>(n), points, static_cast<long long>(t), mean, sd,
                         mean / static_cast<double>(points), base / mean});
            sum << "n=" << n << " threads=" << t << " mean=" << fmt(mean) << " s/cycle\n";
        }
    }
    set_thread_count(saved);
    res.summary = sum.str();
    return res;
}

CommandResult run_experiment(const RunConfig& cfg) {
    if (cfg.experiment == "poisson") return cmd_poisson(cfg);
    if (cfg.experiment == "smoother-compare") return cmd_smoother_compare(cfg);
    if (cfg.experiment == "ns") return cmd_ns(cfg);
    if (cfg.experiment == "timing") return cmd_timing(cfg);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.threads > 0) set_thread_count(cfg.threads);
        const CommandResult res = run_experiment(cfg);
        if (cfg.out.empty()) {
            res.csv.write(out, cfg.hash(), cfg.seed, thread_count());
        } else {
            std::ofstream file(cfg.out);
            if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
            res.csv.write(file, cfg.hash(), cfg.seed, thread_count());
        }
        err << res.summary;
        if (!res.converged) {
            err << "warning: not every solve converged\n";
            if (cfg.strict) return kExitNotConverged;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidParams& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidGrid& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace mgfas
