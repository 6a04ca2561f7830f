#pragma once

#include <optional>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/flow.hpp"

namespace minkflow {

enum class Termination { EndTime, Translator };

/// "t_end" or "translator".
const char* to_string(Termination t) noexcept;

struct RunOptions {
  bool checks = true;
  double check_tol = 0.05;
};

/// Streaming hooks so callers can persist output before a failure aborts the run.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_record(const MonitorRecord&) {}
  virtual void on_snapshot(const FlowState&) {}
  virtual void on_violation(const Violation&) {}
};

struct RunResult {
  FlowState final_state;
  Field final_rate;
  std::vector<MonitorRecord> history;
  Termination termination = Termination::EndTime;
  std::optional<TranslatorFit> translator;
  TheoreticalBounds bounds;
  std::vector<Violation> violations;
  double u0_sup = 0.0;
  double boundary_residual = 0.0;  // initial compatibility residual
  double max_sup_v = 1.0;          // over every step, not just records
  double min_margin = 1.0;         // over every step
};

/// Steps u0 until cfg.t_end or until a translator is detected. Records are
/// taken every cfg.monitor_every, snapshots every cfg.snapshot_every, and both
/// at the start and end. Throws FlowError on solver failure.
RunResult run(Field u0, const Domain& domain, const Grid& grid, const SolverConfig& cfg,
              const RunOptions& options = {}, RunObserver* observer = nullptr);

}  // namespace minkflow
