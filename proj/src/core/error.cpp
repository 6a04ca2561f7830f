#include "core/error.hpp"

namespace minkflow {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::MissingGhostRow: return "MissingGhostRow";
    case ErrorCode::SpacelikeLost: return "SpacelikeLost";
    case ErrorCode::TangentTooSteep: return "TangentTooSteep";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::ShootingFailed: return "ShootingFailed";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace minkflow
