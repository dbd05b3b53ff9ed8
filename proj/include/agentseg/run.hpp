#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agentseg/control.hpp"
#include "agentseg/kernel.hpp"

namespace agentseg {

enum class SolverKind { dal, admm };

struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path out_dir = "out";
    SolverKind solver = SolverKind::admm;
    double alpha = 1500.0;
    double rho = 1e-2;
    double gamma = 1e-2;
    double horizon = 125.0;
    double dt = 0.25;
    double eps_min = 2.0;
    double eps_max = 1100.0;
    double eps_init = 57.0;
    double eta = 1e-10;
    int max_iters = -1;   // -1: 500 for dal, 50 per outer step for admm
    int max_outer = 50;
    double primal_tol = 1e-3;
    KernelKind kernel = KernelKind::standard_wendland;
    int threads = 0;      // 0: OpenMP default
    double cluster_gap = 0.1;

    /// Throws ParameterError on any out-of-range value (including dt not dividing T).
    void validate() const;
};

// Process exit codes returned by run() and the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_input = 3,
    exit_output = 4,
    exit_solver = 5,
};

/// Parses flags (and an optional --config key=value file, which flags
/// override). Returns the config, or an exit code when parsing stopped
/// (help requested or invalid flags); messages go to `out` / `err`.
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = exit_ok;
};
ParseOutcome parse_run_config(int argc, const char* const* argv, std::ostream& out,
                              std::ostream& err);

/// Runs the selected solver and writes final.pgm, controls.csv,
/// cost_history.csv, pixels.csv and clusters.txt into cfg.out_dir.
/// Prints a one-line summary to `out`; errors go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace agentseg
