#pragma once

// Orchestration behind the command-line tool and the C API.

#include <cstddef>
#include <optional>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"

namespace minkflow {

enum ExitStatus : int { kExitClean = 0, kExitViolations = 1, kExitSolverError = 2 };

struct RunReport {
  int exit_status = kExitClean;
  std::string termination;  // "t_end", "translator" or "failed"
  std::optional<double> lambda;
  std::size_t violations = 0;
  double max_sup_v = 1.0;
  double t_final = 0.0;
  std::string message;      // failure description or warnings
};

/// Runs the flow described by cfg and writes into cfg.output_dir:
/// config.ini, monitors.csv, snapshot_NNNN.txt, summary.txt; on failure also
/// state_dump.txt and a FAILED marker. Never throws for solver or I/O
/// failures; those come back as exit status 2.
RunReport run_command(const RunConfig& cfg);

struct OracleReport {
  int exit_status = kExitClean;
  double lambda = 0.0;
  std::string profile_path;
  std::optional<ErrorCode> error;
  std::string message;
};

/// Shoots the radial translator and writes translator_profile.csv into out_dir.
OracleReport oracle_command(double alpha, double radius, const std::string& out_dir,
                            std::size_t n_pts = 4096);

}  // namespace minkflow
