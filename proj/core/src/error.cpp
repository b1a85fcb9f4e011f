#include "meltvisc/error.hpp"

namespace meltvisc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroComposition: return "ZeroComposition";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UnknownSpecies: return "UnknownSpecies";
    case ErrorCode::InvalidComposition: return "InvalidComposition";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveViscosity: return "NonPositiveViscosity";
    case ErrorCode::ConstantFeature: return "ConstantFeature";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::StageMismatch: return "StageMismatch";
    case ErrorCode::InvalidCardinality: return "InvalidCardinality";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::ConstantTarget: return "ConstantTarget";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::MisalignedPredictions: return "MisalignedPredictions";
    case ErrorCode::Singularity: return "Singularity";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::InvalidSuspension: return "InvalidSuspension";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace meltvisc
