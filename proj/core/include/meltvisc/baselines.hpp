#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "meltvisc/chemistry.hpp"
#include "meltvisc/dataset.hpp"

namespace meltvisc {

/// log10 η = a + b / (T − c)
struct VftParams {
  double a = 0.0;  // log10(Pa·s)
  double b = 0.0;  // K
  double c = 0.0;  // K
};

/// Throws Error{Singularity} when T <= c.
double vft_log10_eta(const VftParams& p, double temperature_k);

/// VFT with c = 0. Throws Error{NonPositiveTemperature} when T <= 0.
double arrhenius_log10_eta(double a, double b, double temperature_k);

/// η_eff = η (1 − a c)^b for a suspension with solid volume fraction c.
struct SuspensionParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;  // volume fraction of solids, [0, 1)
};

/// Throws Error{InvalidSuspension} when a c >= 1 or c is outside [0, 1),
/// Error{NonPositiveViscosity} when eta <= 0.
double roscoe_einstein(double eta, const SuspensionParams& p);

/// Parameters of a synthetic VFT melt family. Each VFT coefficient is an
/// affine function of the composition:
///   k(x) = k0 + Σ_i k_i · x_i / 100    (x_i in %mass)
struct SynthSpec {
  std::size_t samples = 2000;
  /// Species sampled on the simplex from a symmetric Dirichlet with integer
  /// concentration (1 is uniform). Every other species gets a trace amount
  /// uniform in [0, trace_max] so no predictor is constant.
  std::vector<Species> active = {Species::SiO2, Species::CaO, Species::Al2O3,
                                 Species::MgO,  Species::Na2O, Species::FeO};
  double trace_max = 0.5;  // %mass
  unsigned concentration = 10;
  double temperature_min = 1400.0;  // K
  double temperature_max = 2000.0;  // K
  VftParams base{-4.0, 5000.0, 400.0};
  std::array<double, kSpeciesCount> a_sensitivity{};
  std::array<double, kSpeciesCount> b_sensitivity{};
  std::array<double, kSpeciesCount> c_sensitivity{};
  /// Standard deviation of additive Gaussian noise on log10 η.
  double noise = 0.0;
  std::uint64_t seed = 0;

  /// Throws Error{InvalidConfig}.
  void validate() const;
};

/// Formers raise the activation term, modifiers and fluoride lower it.
SynthSpec default_synth_spec();

/// The exact generating law of a synthetic dataset.
struct GroundTruth {
  VftParams base;
  std::array<double, kSpeciesCount> a_sensitivity{};
  std::array<double, kSpeciesCount> b_sensitivity{};
  std::array<double, kSpeciesCount> c_sensitivity{};
  double noise = 0.0;
  std::uint64_t seed = 0;

  VftParams params_for(const Composition& comp) const noexcept;
  /// Noise-free log10 viscosity.
  double log10_eta(const Composition& comp, double temperature_k) const;

  /// "key: value" lines.
  std::string to_text() const;
  /// Throws Error{CorruptFile} on malformed input.
  static GroundTruth from_text(const std::string& text);
};

struct SynthResult {
  Dataset raw;
  GroundTruth truth;
};

/// Deterministic per seed. Every temperature is strictly above the sample's
/// liquidus estimate and inside [temperature_min, temperature_max].
SynthResult generate_synthetic(const SynthSpec& spec);

}  // namespace meltvisc
