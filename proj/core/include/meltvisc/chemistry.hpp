#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace meltvisc {

/// The 19 oxide/fluoride species carried by every composition, in canonical
/// order. This order fixes CSV column order, feature order and model files.
enum class Species : std::size_t {
  CaO,
  SiO2,
  MgO,
  Al2O3,
  TiO2,
  MnO,
  FeO,
  CaF2,
  Na2O,
  Li2O,
  B2O3,
  K2O,
  ZrO2,
  Fe2O3,
  P2O5,
  NiO,
  SO3,
  Cr2O3,
  V2O5,
};

inline constexpr std::size_t kSpeciesCount = 19;

inline constexpr std::array<Species, kSpeciesCount> kAllSpecies = {
    Species::CaO,  Species::SiO2, Species::MgO,   Species::Al2O3, Species::TiO2,
    Species::MnO,  Species::FeO,  Species::CaF2,  Species::Na2O,  Species::Li2O,
    Species::B2O3, Species::K2O,  Species::ZrO2,  Species::Fe2O3, Species::P2O5,
    Species::NiO,  Species::SO3,  Species::Cr2O3, Species::V2O5,
};

inline constexpr std::array<std::string_view, kSpeciesCount> kSpeciesNames = {
    "CaO", "SiO2", "MgO",  "Al2O3", "TiO2", "MnO", "FeO",   "CaF2", "Na2O", "Li2O",
    "B2O3", "K2O", "ZrO2", "Fe2O3", "P2O5", "NiO", "SO3", "Cr2O3", "V2O5",
};

/// Molar masses in g/mol from standard atomic weights, 3 decimals.
inline constexpr std::array<double, kSpeciesCount> kMolarMass = {
    56.077,   // CaO
    60.084,   // SiO2
    40.304,   // MgO
    101.961,  // Al2O3
    79.866,   // TiO2
    70.937,   // MnO
    71.844,   // FeO
    78.075,   // CaF2
    61.979,   // Na2O
    29.881,   // Li2O
    69.620,   // B2O3
    94.196,   // K2O
    123.222,  // ZrO2
    159.688,  // Fe2O3
    141.943,  // P2O5
    74.692,   // NiO
    80.063,   // SO3
    151.990,  // Cr2O3
    181.880,  // V2O5
};

/// Upper bounds (%mass) observed in the reference database; lower bounds
/// are all 0. Used only for range warnings, never for clipping.
inline constexpr std::array<double, kSpeciesCount> kReferenceMaxMassPercent = {
    78.00, 100.00, 55.58, 100.00, 49.99, 72.25, 83.49, 34.60, 35.79, 20.00,
    31.02, 48.00,  1.00,  85.10,  4.11,  1.17,  2.02,  3.43,  7.18,
};
inline constexpr double kReferenceMinTemperatureK = 1152.15;
inline constexpr double kReferenceMaxTemperatureK = 2755.15;

constexpr std::size_t index_of(Species s) noexcept { return static_cast<std::size_t>(s); }
constexpr std::string_view name_of(Species s) noexcept { return kSpeciesNames[index_of(s)]; }

/// Throws Error{UnknownSpecies} for names outside the canonical list.
Species parse_species(std::string_view name);
/// Throws Error{UnknownSpecies} for indices >= kSpeciesCount.
Species species_at(std::size_t index);

/// Structural role of a species in the oxide network.
enum class SpeciesRole { MO, M2O, M2O3, MO2, M2O5, Fluoride, Other };

std::string_view to_string(SpeciesRole role) noexcept;

using RoleTable = std::array<SpeciesRole, kSpeciesCount>;

/// Modifiers MO/M2O, amphoterics M2O3, formers MO2/M2O5, CaF2 and SO3 apart.
inline constexpr RoleTable kDefaultRoles = {
    SpeciesRole::MO,        // CaO
    SpeciesRole::MO2,       // SiO2
    SpeciesRole::MO,        // MgO
    SpeciesRole::M2O3,      // Al2O3
    SpeciesRole::MO2,       // TiO2
    SpeciesRole::MO,        // MnO
    SpeciesRole::MO,        // FeO
    SpeciesRole::Fluoride,  // CaF2
    SpeciesRole::M2O,       // Na2O
    SpeciesRole::M2O,       // Li2O
    SpeciesRole::M2O3,      // B2O3
    SpeciesRole::M2O,       // K2O
    SpeciesRole::MO2,       // ZrO2
    SpeciesRole::M2O3,      // Fe2O3
    SpeciesRole::M2O5,      // P2O5
    SpeciesRole::MO,        // NiO
    SpeciesRole::Other,     // SO3
    SpeciesRole::M2O3,      // Cr2O3
    SpeciesRole::M2O5,      // V2O5
};

SpeciesRole species_role(Species s, const RoleTable& roles = kDefaultRoles) noexcept;

/// Mass-percent amounts over the canonical species.
///
/// Amounts must be finite and non-negative, and their total must not exceed
/// 100 + tolerance. An all-zero composition is representable (it has a
/// well-defined liquidus estimate) but has no mole fractions.
class Composition {
 public:
  static constexpr double kDefaultTolerance = 1.0;

  Composition() = default;

  /// Throws Error{InvalidComposition} when an invariant is violated.
  explicit Composition(const std::array<double, kSpeciesCount>& mass_percent,
                       double tolerance = kDefaultTolerance);

  double operator[](Species s) const noexcept { return amounts_[index_of(s)]; }
  const std::array<double, kSpeciesCount>& amounts() const noexcept { return amounts_; }
  double total() const noexcept;

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::array<double, kSpeciesCount> amounts_{};
};

/// Builder-style helper for tests and fixtures: {{Species::CaO, 50}, ...}.
Composition make_composition(std::initializer_list<std::pair<Species, double>> amounts,
                             double tolerance = Composition::kDefaultTolerance);

struct MoleFractions {
  std::array<double, kSpeciesCount> values{};

  double operator[](Species s) const noexcept { return values[index_of(s)]; }
};

/// Normalized molar amounts. Throws Error{ZeroComposition} if all amounts are 0.
MoleFractions to_mole_fractions(const Composition& comp);

/// Non-bridging oxygens per tetrahedral cation:
///   2 (ΣX_MO + ΣX_M2O − ΣX_M2O3) / (ΣX_MO2 + 2 ΣX_M2O3).
/// Species with roles M2O5, Fluoride and Other enter neither sum. Negative
/// results (alumina-rich melts) are returned as-is.
/// Throws Error{ZeroDenominator} when no former or amphoteric is present.
double nbo_t(const MoleFractions& mf, const RoleTable& roles = kDefaultRoles);

/// Convenience: nbo_t(to_mole_fractions(comp)).
double nbo_t(const Composition& comp, const RoleTable& roles = kDefaultRoles);

/// Degree of polymerization Q = 4 − NBO/T.
constexpr double polymerization_q(double nbo_t_value) noexcept { return 4.0 - nbo_t_value; }

/// Mass fraction of fluorine in CaF2 (2 F per formula unit).
inline constexpr double kFluorineMassFractionInCaF2 = 2.0 * 18.998 / 78.075;

/// Per-species slope (K per %mass) of the linear liquidus estimate. Species
/// without a term have slope 0; CaF2 carries the fluorine term scaled by its
/// fluorine mass fraction.
inline constexpr std::array<double, kSpeciesCount> kLiquidusSlope = {
    2.59,                              // CaO
    -1.518,                            // SiO2
    -17.1,                             // MgO
    1.56,                              // Al2O3
    0.0,                               // TiO2
    -2.12,                             // MnO
    -9.87,                             // FeO
    4.8 * kFluorineMassFractionInCaF2, // CaF2 (as %F)
    -9.06,                             // Na2O
    18.0,                              // Li2O
    0.0,                               // B2O3
    -6.0,                              // K2O
    0.0,                               // ZrO2
    0.0,                               // Fe2O3
    0.0,                               // P2O5
    0.0,                               // NiO
    0.0,                               // SO3
    0.0,                               // Cr2O3
    0.0,                               // V2O5
};
inline constexpr double kLiquidusIntercept = 1473.0;

/// Linear liquidus estimate in K.
double liquidus_temperature(const Composition& comp) noexcept;

}  // namespace meltvisc
