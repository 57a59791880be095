#pragma once

#include <stdexcept>
#include <string>

namespace illusion {

enum class ErrorCode {
  DegenerateTowers,
  NonPositiveCalibration,
  ZeroReceiverGain,
  NonPositiveDefiniteWeight,
  BoxExcludesZero,
  NonPositiveEpsilon,
  InvalidStageLimit,
  InvalidHorizon,
  ModeVariantMismatch,
  NonPositiveIntensity,
  EmptyIState,
  NotConverged,
  IllConditioned,
  InfeasiblePoint,
  ClosedLoopMismatch,
  Parse,
  Io,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Configuration errors; the CLI maps these to exit status 1.
inline bool is_config_error(ErrorCode code) {
  switch (code) {
  case ErrorCode::DegenerateTowers:
  case ErrorCode::NonPositiveCalibration:
  case ErrorCode::ZeroReceiverGain:
  case ErrorCode::NonPositiveDefiniteWeight:
  case ErrorCode::BoxExcludesZero:
  case ErrorCode::NonPositiveEpsilon:
  case ErrorCode::InvalidStageLimit:
  case ErrorCode::InvalidHorizon:
  case ErrorCode::ModeVariantMismatch:
  case ErrorCode::Parse:
  case ErrorCode::Io:
    return true;
  default:
    return false;
  }
}

} // namespace illusion
