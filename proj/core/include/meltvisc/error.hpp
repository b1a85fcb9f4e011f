#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meltvisc {

enum class ErrorCode {
  // chemistry
  ZeroComposition,
  ZeroDenominator,
  UnknownSpecies,
  InvalidComposition,
  // pipeline
  EmptyInput,
  NonPositiveViscosity,
  ConstantFeature,
  TooSmall,
  StageMismatch,
  // network
  InvalidCardinality,
  InvalidConfig,
  ShapeMismatch,
  EmptySet,
  // sensitivity
  DegenerateModel,
  // metrics
  LengthMismatch,
  TooFew,
  ConstantTarget,
  ZeroVariance,
  MisalignedPredictions,
  // baselines
  Singularity,
  NonPositiveTemperature,
  InvalidSuspension,
  // persistence / io
  VersionMismatch,
  CorruptFile,
  SchemaError,
  InvalidValue,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every library failure. The code identifies the
/// failure class; what() carries a human-readable location.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace meltvisc
