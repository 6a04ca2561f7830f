// minkflow command-line tool. Talks to the library through the C API only.
//
//   minkflow run <config.ini> [--out DIR] [--seed N] [--no-checks]
//   minkflow oracle --alpha A --radius R [--out DIR]
//
// Exit codes: 0 clean, 1 estimate violations, 2 solver or input error.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "minkflow/minkflow.h"

namespace {

constexpr int kExitError = 2;

int report_failure(const char* what, mf_status status) {
  std::fprintf(stderr, "minkflow: %s: %s: %s\n", what, mf_status_string(status), mf_last_error());
  return kExitError;
}

struct ConfigDeleter {
  void operator()(mf_config* c) const { mf_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(mf_run_result* r) const { mf_run_result_destroy(r); }
};

int do_run(const std::string& config_path, const std::optional<std::string>& out_dir,
           const std::optional<std::uint64_t>& seed, bool no_checks) {
  mf_config* raw = nullptr;
  if (const mf_status s = mf_config_load(config_path.c_str(), &raw); s != MF_OK) {
    return report_failure("config", s);
  }
  std::unique_ptr<mf_config, ConfigDeleter> cfg(raw);
  if (out_dir) mf_config_set_output_dir(cfg.get(), out_dir->c_str());
  if (seed) mf_config_set_seed(cfg.get(), *seed);
  if (no_checks) mf_config_set_checks(cfg.get(), 0);

  mf_run_result* raw_result = nullptr;
  if (const mf_status s = mf_run(cfg.get(), &raw_result); s != MF_OK) {
    return report_failure("run", s);
  }
  std::unique_ptr<mf_run_result, ResultDeleter> result(raw_result);

  const int code = mf_run_result_exit_code(result.get());
  std::printf("termination=%s\n", mf_run_result_termination(result.get()));
  std::printf("t_final=%.10g\n", mf_run_result_t_final(result.get()));
  std::printf("max_sup_v=%.10g\n", mf_run_result_max_sup_v(result.get()));
  double lambda = 0.0;
  if (mf_run_result_lambda(result.get(), &lambda)) std::printf("lambda=%.12g\n", lambda);
  std::printf("violations=%zu\n", mf_run_result_violations(result.get()));
  std::printf("output=%s\n", mf_config_output_dir(cfg.get()));
  const std::string message = mf_run_result_message(result.get());
  if (!message.empty()) std::fprintf(stderr, "minkflow: %s\n", message.c_str());
  return code;
}

int do_oracle(double alpha, double radius, const std::string& out_dir) {
  double lambda = 0.0;
  if (const mf_status s = mf_oracle_command(alpha, radius, out_dir.c_str(), &lambda); s != MF_OK) {
    return report_failure("oracle", s);
  }
  std::printf("lambda=%.15g\n", lambda);
  std::printf("profile=%s/translator_profile.csv\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spacelike mean curvature flow with a boundary-angle condition"};
  app.set_version_flag("--version", std::string(mf_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> run_out;
  std::optional<std::uint64_t> seed;
  bool no_checks = false;
  auto* run = app.add_subcommand("run", "Evolve the configuration and write outputs");
  run->add_option("config", config_path, "INI configuration file")->required();
  run->add_option("--out", run_out, "Output directory (overrides [output] dir)");
  run->add_option("--seed", seed, "Seed for random initial data");
  run->add_flag("--no-checks", no_checks, "Skip the a priori estimate checks");

  double alpha = 0.0;
  double radius = 1.0;
  std::string oracle_out = "minkflow_oracle";
  auto* oracle = app.add_subcommand("oracle", "Shoot the radial translator on a disk");
  oracle->add_option("--alpha", alpha, "Constant boundary angle")->required();
  oracle->add_option("--radius", radius, "Disk radius")->required();
  oracle->add_option("--out", oracle_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (*run) return do_run(config_path, run_out, seed, no_checks);
  return do_oracle(alpha, radius, oracle_out);
}
