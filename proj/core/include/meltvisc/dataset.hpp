#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "meltvisc/chemistry.hpp"

namespace meltvisc {

/// Number of predictors: the 19 species amounts followed by temperature.
inline constexpr std::size_t kFeatureCount = kSpeciesCount + 1;
inline constexpr std::size_t kTemperatureFeature = kSpeciesCount;

/// Raw samples carry viscosity in Pa·s; processed samples carry log10(Pa·s).
enum class Stage { Raw, Processed };

std::string_view to_string(Stage stage) noexcept;

struct Sample {
  Composition composition;
  double temperature_k = 0.0;
  /// Viscosity in Pa·s (Raw) or log10 viscosity (Processed); see Dataset::stage.
  double target = 0.0;

  /// Predictor vector in canonical order (species amounts, then temperature).
  std::array<double, kFeatureCount> features() const noexcept;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  Stage stage = Stage::Raw;
  std::vector<Sample> samples;
  std::string provenance;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }

  std::vector<double> targets() const;
};

/// Throws Error{InvalidComposition} etc. if a sample breaks the per-stage
/// invariants (temperature > 0, raw viscosity > 0, processed target finite).
void validate(const Dataset& ds);

}  // namespace meltvisc
