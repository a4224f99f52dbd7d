// The four command-line workflows. Each writes its outputs under an output
// directory and returns a process exit code.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "antiplane/config.hpp"

namespace antiplane {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct RunOptions {
  std::filesystem::path out_dir;
  /// Field CSV to check (verify, sweep). Defaults to <out>/field.csv for
  /// verify; sweep solves first when absent.
  std::optional<std::filesystem::path> solution;
};

/// Ellipticity and Knowles tables plus a markdown summary.
int run_analyze(const ExperimentConfig& cfg, const RunOptions& opt);

/// Field CSV, solve report JSON and summary.
int run_solve(const ExperimentConfig& cfg, const RunOptions& opt);

/// Equilibrium report JSON, residual-field CSVs and summary.
int run_verify(const ExperimentConfig& cfg, const RunOptions& opt);

/// c-sweep CSV and summary naming the argmin over c.
int run_sweep(const ExperimentConfig& cfg, const RunOptions& opt);

/// Dispatches by subcommand name and maps exceptions to exit codes,
/// printing the message to stderr.
int run_command(const std::string& command, const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace antiplane
