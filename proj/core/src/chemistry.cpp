#include "meltvisc/chemistry.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "meltvisc/error.hpp"

namespace meltvisc {

Species parse_species(std::string_view name) {
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    if (kSpeciesNames[i] == name) return kAllSpecies[i];
  }
  throw Error(ErrorCode::UnknownSpecies, "'" + std::string(name) + "'");
}

Species species_at(std::size_t index) {
  if (index >= kSpeciesCount) {
    throw Error(ErrorCode::UnknownSpecies, "index " + std::to_string(index));
  }
  return kAllSpecies[index];
}

std::string_view to_string(SpeciesRole role) noexcept {
  switch (role) {
    case SpeciesRole::MO: return "MO";
    case SpeciesRole::M2O: return "M2O";
    case SpeciesRole::M2O3: return "M2O3";
    case SpeciesRole::MO2: return "MO2";
    case SpeciesRole::M2O5: return "M2O5";
    case SpeciesRole::Fluoride: return "Fluoride";
    case SpeciesRole::Other: return "Other";
  }
  return "?";
}

SpeciesRole species_role(Species s, const RoleTable& roles) noexcept { return roles[index_of(s)]; }

Composition::Composition(const std::array<double, kSpeciesCount>& mass_percent, double tolerance)
    : amounts_(mass_percent) {
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    const double v = amounts_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidComposition,
                  std::string(kSpeciesNames[i]) + " = " + std::to_string(v) + " is not a valid %mass");
    }
  }
  if (total() > 100.0 + tolerance) {
    throw Error(ErrorCode::InvalidComposition,
                "total " + std::to_string(total()) + " %mass exceeds 100 + " + std::to_string(tolerance));
  }
}

double Composition::total() const noexcept { return std::accumulate(amounts_.begin(), amounts_.end(), 0.0); }

Composition make_composition(std::initializer_list<std::pair<Species, double>> amounts, double tolerance) {
  std::array<double, kSpeciesCount> a{};
  for (const auto& [s, v] : amounts) a[index_of(s)] += v;
  return Composition(a, tolerance);
}

MoleFractions to_mole_fractions(const Composition& comp) {
  MoleFractions mf;
  double total_moles = 0.0;
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    mf.values[i] = comp.amounts()[i] / kMolarMass[i];
    total_moles += mf.values[i];
  }
  if (total_moles <= 0.0) throw Error(ErrorCode::ZeroComposition, "all species amounts are zero");
  for (double& x : mf.values) x /= total_moles;
  return mf;
}

double nbo_t(const MoleFractions& mf, const RoleTable& roles) {
  double mo = 0.0, m2o = 0.0, m2o3 = 0.0, mo2 = 0.0;
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    switch (roles[i]) {
      case SpeciesRole::MO: mo += mf.values[i]; break;
      case SpeciesRole::M2O: m2o += mf.values[i]; break;
      case SpeciesRole::M2O3: m2o3 += mf.values[i]; break;
      case SpeciesRole::MO2: mo2 += mf.values[i]; break;
      default: break;
    }
  }
  const double denominator = mo2 + 2.0 * m2o3;
  if (denominator == 0.0) {
    throw Error(ErrorCode::ZeroDenominator, "no MO2 or M2O3 species present");
  }
  return 2.0 * (mo + m2o - m2o3) / denominator;
}

double nbo_t(const Composition& comp, const RoleTable& roles) { return nbo_t(to_mole_fractions(comp), roles); }

double liquidus_temperature(const Composition& comp) noexcept {
  double t = kLiquidusIntercept;
  for (std::size_t i = 0; i < kSpeciesCount; ++i) t += kLiquidusSlope[i] * comp.amounts()[i];
  return t;
}

}  // namespace meltvisc
