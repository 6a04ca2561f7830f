#pragma once

#include <stdexcept>
#include <string>

namespace minkflow {

// Values mirror mf_status in the C header; keep them in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NonPositiveRadius = 2,
  NotStrictlyConvex = 3,
  ResolutionTooLow = 4,
  MissingGhostRow = 5,
  SpacelikeLost = 6,
  TangentTooSteep = 7,
  NonFinite = 8,
  NotSpacelike = 9,
  ShootingFailed = 10,
  Parse = 11,
  Validation = 12,
  Io = 13,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minkflow
