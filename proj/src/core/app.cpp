#include "core/app.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/field_io.hpp"
#include "core/oracle.hpp"
#include "core/run.hpp"

namespace minkflow {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  return out;
}

class OutputWriter : public RunObserver {
 public:
  explicit OutputWriter(const fs::path& dir)
      : dir_(dir), monitors_(open_out(dir / "monitors.csv")) {
    write_monitor_header(monitors_);
  }

  void on_record(const MonitorRecord& r) override {
    write_monitor_row(monitors_, r);
    monitors_.flush();
  }

  void on_snapshot(const FlowState& s) override {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%04zu.txt", snapshots_++);
    std::ofstream out = open_out(dir_ / name);
    write_field(out, s.u, s.t);
  }

  std::size_t snapshots() const { return snapshots_; }

 private:
  fs::path dir_;
  std::ofstream monitors_;
  std::size_t snapshots_ = 0;
};

void write_failure(const fs::path& dir, const std::string& message, const FlowState* state) {
  std::ofstream marker(dir / "FAILED");
  marker << message << '\n';
  if (state) {
    std::ofstream dump(dir / "state_dump.txt");
    write_field(dump, state->u, state->t);
  }
}

}  // namespace

RunReport run_command(const RunConfig& cfg) {
  RunReport report;
  const fs::path dir(cfg.output_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw Error(ErrorCode::Io, "cannot create output directory '" + dir.string() + "'");
    }
    {
      std::ofstream copy = open_out(dir / "config.ini");
      copy << cfg.source_text;
    }

    const Domain domain(cfg.domain, make_angle(cfg), cfg.n_samples);
    const Grid grid(domain, cfg.n_r, cfg.n_theta);
    Field u0 = make_initial_field(cfg.initial, grid);

    OutputWriter writer(dir);
    RunResult result;
    try {
      result = run(std::move(u0), domain, grid, cfg.solver, RunOptions{cfg.checks, cfg.check_tol},
                   &writer);
    } catch (const FlowError& e) {
      report.exit_status = kExitSolverError;
      report.termination = "failed";
      report.message = std::string(to_string(e.code())) + ": " + e.what();
      report.t_final = e.last_good_state().t;
      write_failure(dir, report.message, &e.last_good_state());
      std::ofstream summary(dir / "summary.txt");
      summary << "termination=failed\nerror=" << report.message << '\n';
      return report;
    }

    report.termination = to_string(result.termination);
    if (result.translator) report.lambda = result.translator->lambda;
    report.violations = result.violations.size();
    report.max_sup_v = result.max_sup_v;
    report.t_final = result.final_state.t;
    report.exit_status = report.violations > 0 ? kExitViolations : kExitClean;
    if (result.boundary_residual > 1e-2) {
      report.message = "warning: initial boundary compatibility residual " +
                       fmt(result.boundary_residual) + " exceeds 1e-2";
    }

    std::ofstream summary = open_out(dir / "summary.txt");
    const TheoreticalBounds& b = result.bounds;
    summary << "termination=" << report.termination << '\n'
            << "lambda=" << (report.lambda ? fmt(*report.lambda) : std::string("none")) << '\n'
            << "lambda_since=" << (result.translator ? fmt(result.translator->since) : "none")
            << '\n'
            << "t_final=" << fmt(result.final_state.t) << '\n'
            << "steps=" << result.final_state.step_count << '\n'
            << "C_H=" << fmt(b.C_H) << '\n'
            << "alpha_bar=" << fmt(b.alpha_bar) << '\n'
            << "kappa_min=" << fmt(b.kappa_min) << '\n'
            << "C_alpha=" << fmt(b.C_alpha) << '\n'
            << "C_grad=" << fmt(b.C_grad) << '\n'
            << "sup_v0=" << fmt(b.sup_v0) << '\n'
            << "max_sup_v=" << fmt(result.max_sup_v) << '\n'
            << "min_spacelike_margin=" << fmt(result.min_margin) << '\n'
            << "boundary_residual=" << fmt(result.boundary_residual) << '\n'
            << "checks=" << (cfg.checks ? "on" : "off") << '\n'
            << "violations=" << report.violations << '\n';
    for (const auto& v : result.violations) {
      summary << "violation=" << v.quantity << " t=" << fmt(v.t) << " observed=" << fmt(v.observed)
              << " bound=" << fmt(v.bound) << '\n';
    }
  } catch (const Error& e) {
    report.exit_status = kExitSolverError;
    report.termination = "failed";
    report.message = std::string(to_string(e.code())) + ": " + e.what();
    std::error_code ec;
    if (fs::is_directory(dir, ec)) write_failure(dir, report.message, nullptr);
  }
  return report;
}

OracleReport oracle_command(double alpha, double radius, const std::string& out_dir,
                            std::size_t n_pts) {
  OracleReport report;
  try {
    const RadialProfile profile = translator_shoot(alpha, radius, n_pts);
    report.lambda = *profile.lambda;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = dir / "translator_profile.csv";
    std::ofstream out = open_out(path);
    write_profile_csv(out, profile);
    report.profile_path = path.string();
  } catch (const Error& e) {
    report.exit_status = kExitSolverError;
    report.error = e.code();
    report.message = e.what();
  }
  return report;
}

}  // namespace minkflow
