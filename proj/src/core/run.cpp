#include "core/run.hpp"

#include <algorithm>
#include <cmath>

namespace minkflow {

const char* to_string(Termination t) noexcept {
  return t == Termination::Translator ? "translator" : "t_end";
}

RunResult run(Field u0, const Domain& domain, const Grid& grid, const SolverConfig& cfg,
              const RunOptions& options, RunObserver* observer) {
  cfg.validate();
  if (u0.n_r() != grid.n_r() || u0.n_theta() != grid.n_theta()) {
    throw Error(ErrorCode::InvalidArgument, "run: initial field shape does not match grid");
  }
  if (!u0.all_finite()) throw Error(ErrorCode::NonFinite, "run: initial field is not finite");

  FlowSolver solver(domain, grid, cfg);
  RunResult result;
  result.boundary_residual = boundary_compatibility_residual(grid, domain, u0);

  FlowState state{std::move(u0), 0.0, 0, 0.0};
  double margin = 0.0;
  try {
    margin = solver.tendency(state.u).min_margin;
  } catch (const Error& e) {
    throw FlowError(e.code(), std::string(e.what()) + " (initial data)", state);
  }
  {
    const auto rate = solver.tendency(state.u).rate.values();
    double c_h = 0.0;
    for (double x : rate) c_h = std::max(c_h, std::abs(x));
    result.bounds = make_bounds(domain, c_h, 1.0 / std::sqrt(margin));
  }
  for (double x : state.u.values()) result.u0_sup = std::max(result.u0_sup, std::abs(x));
  result.max_sup_v = 1.0 / std::sqrt(margin);
  result.min_margin = margin;

  // Bounds are checked after every step; a violating step is recorded even
  // when it falls between monitor times.
  auto record = [&](double m, bool on_cadence) {
    const MonitorRecord rec = make_record(grid, state, solver.tendency(state.u).rate, m);
    std::vector<Violation> found;
    if (options.checks) found = check_bounds(rec, result.bounds, result.u0_sup, options.check_tol);
    if (!on_cadence && found.empty()) return;
    result.history.push_back(rec);
    if (observer) observer->on_record(rec);
    for (auto& v : found) {
      if (observer) observer->on_violation(v);
      result.violations.push_back(std::move(v));
    }
  };
  double last_snapshot_t = -1.0;
  auto snapshot = [&] {
    if (state.t == last_snapshot_t) return;
    last_snapshot_t = state.t;
    if (observer) observer->on_snapshot(state);
  };

  record(margin, true);
  snapshot();
  double next_monitor = cfg.monitor_every;
  double next_snapshot = cfg.snapshot_every;
  const double t_slack = 1e-12 * std::max(1.0, cfg.t_end);

  while (true) {
    if (state.t >= cfg.t_end - t_slack) {
      result.termination = Termination::EndTime;
      break;
    }
    if (auto fit = detect_translator(result.history, cfg)) {
      result.termination = Termination::Translator;
      result.translator = fit;
      break;
    }
    state = solver.step(std::move(state), cfg.t_end - state.t);
    if (std::abs(state.t - cfg.t_end) <= t_slack) state.t = cfg.t_end;
    margin = solver.tendency(state.u).min_margin;
    result.max_sup_v = std::max(result.max_sup_v, 1.0 / std::sqrt(margin));
    result.min_margin = std::min(result.min_margin, margin);

    const bool at_end = state.t >= cfg.t_end - t_slack;
    const bool due = state.t >= next_monitor - t_slack || at_end;
    record(margin, due);
    if (due) {
      while (next_monitor <= state.t + t_slack) next_monitor += cfg.monitor_every;
    }
    if (state.t >= next_snapshot - t_slack) {
      snapshot();
      while (next_snapshot <= state.t + t_slack) next_snapshot += cfg.snapshot_every;
    }
  }
  if (result.history.back().t != state.t) record(margin, true);
  snapshot();
  if (result.termination == Termination::EndTime) {
    // a translator can also be confirmed exactly at t_end
    result.translator = detect_translator(result.history, cfg);
  }

  result.final_rate = solver.tendency(state.u).rate;
  result.final_state = std::move(state);
  return result;
}

}  // namespace minkflow
