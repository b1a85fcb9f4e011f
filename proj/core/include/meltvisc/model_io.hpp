#pragma once

#include <filesystem>
#include <string>

#include "meltvisc/network.hpp"
#include "meltvisc/pipeline.hpp"

namespace meltvisc {

inline constexpr int kModelFormatVersion = 1;

/// Self-describing text model: format version, species order, layer widths,
/// activations, bias-init tag, scaler μ/σ, then row-major weight matrices and
/// bias vectors. Numbers use shortest round-trip decimals, so a reloaded
/// model predicts bit-identically.
std::string model_to_text(const MlpModel& model);

/// Throws Error{VersionMismatch} for an unsupported version tag and
/// Error{CorruptFile} for anything malformed or truncated.
MlpModel model_from_text(const std::string& text);

void save_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model(const std::filesystem::path& path);

std::string scaler_to_text(const Scaler& scaler);
Scaler scaler_from_text(const std::string& text);

/// epoch,loss,mae,val_loss,val_mae
std::string history_csv(const TrainHistory& history);

}  // namespace meltvisc
