#pragma once

// Run configuration: a flat INI-style document.
//
//   # comment
//   [domain]   kind = disk | ellipse | radial-fourier
//              radius, a, b, mean_radius, cos = <list>, sin = <list>, center = <x> <y>, n_samples
//   [alpha]    kind = constant | fourier | compatible
//              value, cos = <list>, sin = <list>
//   [initial]  kind = zero | plane | bump | fourier
//              a = <ax> <ay>, beta, seed, max_slope, modes
//   [grid]     n_r, n_theta
//   [solver]   sigma, eps_space, t_end, trans_tol, trans_window, snapshot_every, monitor_every
//   [output]   dir
//   [checks]   enabled = true | false, tolerance
//
// Unknown sections or keys and duplicate keys are parse errors.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/domain.hpp"
#include "core/error.hpp"
#include "core/flow.hpp"
#include "core/grid.hpp"

namespace minkflow {

class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, const std::string& message, std::size_t line, std::string field)
      : Error(code, message), line_(line), field_(std::move(field)) {}

  /// 1-based line of a parse error; 0 for validation errors.
  std::size_t line() const { return line_; }
  /// "section.key" the error refers to, when known.
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

enum class AlphaSource { Constant, Fourier, Compatible };

struct AlphaConfig {
  AlphaSource source = AlphaSource::Constant;
  double value = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

enum class InitialKind { Zero, Plane, Bump, Fourier };

struct InitialSpec {
  InitialKind kind = InitialKind::Zero;
  Vec2 slope{};          // plane
  double beta = 0.2;     // bump beta (1 - r^2)^2
  std::uint64_t seed = 1;
  double max_slope = 0.8;
  int modes = 4;
};

struct RunConfig {
  DomainSpec domain = DomainSpec::disk(1.0);
  std::size_t n_samples = 1024;
  AlphaConfig alpha;
  InitialSpec initial;
  std::size_t n_r = 48;
  std::size_t n_theta = 96;
  SolverConfig solver;
  std::string output_dir = "minkflow_out";
  bool checks = true;
  double check_tol = 0.05;
  std::string source_text;

  /// Throws ConfigError(Validation) naming the field.
  void validate() const;
};

/// Throws ConfigError(Parse) with a line number or ConfigError(Validation).
RunConfig parse_config(std::string_view text);
/// Throws Error(Io) naming the path, or the errors of parse_config.
RunConfig load_config(const std::string& path);

AnglePrescription make_angle(const RunConfig& cfg);
Field make_initial_field(const InitialSpec& spec, const Grid& grid);

}  // namespace minkflow
