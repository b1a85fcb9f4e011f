#include "meltvisc/dataset.hpp"

#include <cmath>
#include <string>

#include "meltvisc/error.hpp"

namespace meltvisc {

std::string_view to_string(Stage stage) noexcept { return stage == Stage::Raw ? "raw" : "processed"; }

std::array<double, kFeatureCount> Sample::features() const noexcept {
  std::array<double, kFeatureCount> f{};
  for (std::size_t i = 0; i < kSpeciesCount; ++i) f[i] = composition.amounts()[i];
  f[kTemperatureFeature] = temperature_k;
  return f;
}

std::vector<double> Dataset::targets() const {
  std::vector<double> y;
  y.reserve(samples.size());
  for (const auto& s : samples) y.push_back(s.target);
  return y;
}

void validate(const Dataset& ds) {
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const Sample& s = ds.samples[i];
    const std::string where = "sample " + std::to_string(i);
    if (!(s.temperature_k > 0.0) || !std::isfinite(s.temperature_k)) {
      throw Error(ErrorCode::NonPositiveTemperature, where + ": temperature must be > 0 K");
    }
    if (ds.stage == Stage::Raw && (!(s.target > 0.0) || !std::isfinite(s.target))) {
      throw Error(ErrorCode::NonPositiveViscosity, where + ": viscosity must be > 0 Pa·s");
    }
    if (ds.stage == Stage::Processed && !std::isfinite(s.target)) {
      throw Error(ErrorCode::InvalidValue, where + ": log10 viscosity must be finite");
    }
  }
}

}  // namespace meltvisc
