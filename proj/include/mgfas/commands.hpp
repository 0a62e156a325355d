#pragma once

// Experiment drivers behind the command-line subcommands. Each driver
// turns a validated RunConfig into CSV rows.

#include "mgfas/config.hpp"
#include "mgfas/csv.hpp"

#include <ostream>
#include <string>
#include <utility>

namespace mgfas {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNotConverged = 3 };

struct CommandResult {
    explicit CommandResult(CsvWriter c) : csv(std::move(c)) {}

    CsvWriter csv;
    bool converged = true;  // every solve reached its tolerance (and the cavity became steady)
    std::string summary;    // human-readable lines for stderr
};

CommandResult cmd_poisson(const RunConfig& cfg);
CommandResult cmd_smoother_compare(const RunConfig& cfg);
CommandResult cmd_ns(const RunConfig& cfg);
CommandResult cmd_timing(const RunConfig& cfg);

/// Dispatches on cfg.experiment.
CommandResult run_experiment(const RunConfig& cfg);

/// Validates, applies the thread count, runs, writes the CSV to cfg.out (or
/// `out` when empty) and the summary to `err`. Returns an ExitCode.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace mgfas
