#include "meltvisc/baselines.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "meltvisc/error.hpp"
#include "meltvisc/random.hpp"

namespace meltvisc {

double vft_log10_eta(const VftParams& p, double temperature_k) {
  if (!(temperature_k > p.c)) {
    throw Error(ErrorCode::Singularity, fmt::format("T = {} K is not above c = {} K", temperature_k, p.c));
  }
  return p.a + p.b / (temperature_k - p.c);
}

double arrhenius_log10_eta(double a, double b, double temperature_k) {
  if (!(temperature_k > 0.0)) {
    throw Error(ErrorCode::NonPositiveTemperature, fmt::format("T = {} K", temperature_k));
  }
  return vft_log10_eta({a, b, 0.0}, temperature_k);
}

double roscoe_einstein(double eta, const SuspensionParams& p) {
  if (!(eta > 0.0)) throw Error(ErrorCode::NonPositiveViscosity, fmt::format("liquid viscosity {} Pa·s", eta));
  if (!(p.c >= 0.0 && p.c < 1.0)) {
    throw Error(ErrorCode::InvalidSuspension, fmt::format("solid fraction {} outside [0, 1)", p.c));
  }
  if (!(p.a * p.c < 1.0)) throw Error(ErrorCode::InvalidSuspension, fmt::format("a·c = {} >= 1", p.a * p.c));
  return eta * std::pow(1.0 - p.a * p.c, p.b);
}

void SynthSpec::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (samples < 1) fail("sample count must be >= 1");
  if (active.empty()) fail("at least one active species is required");
  if (std::set<Species>(active.begin(), active.end()).size() != active.size()) fail("active species repeat");
  if (!(trace_max >= 0.0)) fail("trace_max must be >= 0");
  if (concentration < 1) fail("concentration must be >= 1");
  if (trace_max * static_cast<double>(kSpeciesCount - active.size()) >= 100.0) fail("trace amounts leave no room");
  if (!(temperature_min >= kReferenceMinTemperatureK && temperature_max <= kReferenceMaxTemperatureK &&
        temperature_min < temperature_max)) {
    fail(fmt::format("temperature range must lie inside [{}, {}] K", kReferenceMinTemperatureK,
                     kReferenceMaxTemperatureK));
  }
  if (!(noise >= 0.0)) fail("noise must be >= 0");
  double c_max = base.c;
  for (double s : c_sensitivity) c_max += std::max(s, 0.0);
  if (!(c_max < temperature_min)) fail("VFT c can reach the minimum temperature");
}

SynthSpec default_synth_spec() {
  SynthSpec s;
  auto set = [](std::array<double, kSpeciesCount>& arr, Species sp, double v) { arr[index_of(sp)] = v; };
  // Activation term (K per unit mass fraction).
  set(s.b_sensitivity, Species::SiO2, 7000.0);
  set(s.b_sensitivity, Species::Al2O3, 5000.0);
  set(s.b_sensitivity, Species::TiO2, 1000.0);
  set(s.b_sensitivity, Species::ZrO2, 2000.0);
  set(s.b_sensitivity, Species::P2O5, 3000.0);
  set(s.b_sensitivity, Species::Cr2O3, 1000.0);
  set(s.b_sensitivity, Species::CaO, -1500.0);
  set(s.b_sensitivity, Species::MgO, -2000.0);
  set(s.b_sensitivity, Species::MnO, -2500.0);
  set(s.b_sensitivity, Species::FeO, -3000.0);
  set(s.b_sensitivity, Species::NiO, -1000.0);
  set(s.b_sensitivity, Species::Na2O, -4500.0);
  set(s.b_sensitivity, Species::K2O, -3000.0);
  set(s.b_sensitivity, Species::Li2O, -5000.0);
  set(s.b_sensitivity, Species::B2O3, -2000.0);
  set(s.b_sensitivity, Species::Fe2O3, -1000.0);
  set(s.b_sensitivity, Species::CaF2, -4000.0);
  set(s.b_sensitivity, Species::V2O5, -500.0);
  // Pre-exponential term.
  set(s.a_sensitivity, Species::SiO2, -0.5);
  set(s.a_sensitivity, Species::Na2O, 0.3);
  // Vogel temperature.
  set(s.c_sensitivity, Species::SiO2, -150.0);
  set(s.c_sensitivity, Species::CaO, 100.0);
  set(s.c_sensitivity, Species::MgO, 80.0);
  set(s.c_sensitivity, Species::Al2O3, 150.0);
  return s;
}

VftParams GroundTruth::params_for(const Composition& comp) const noexcept {
  VftParams p = base;
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    const double w = comp.amounts()[i] / 100.0;
    p.a += a_sensitivity[i] * w;
    p.b += b_sensitivity[i] * w;
    p.c += c_sensitivity[i] * w;
  }
  return p;
}

double GroundTruth::log10_eta(const Composition& comp, double temperature_k) const {
  return vft_log10_eta(params_for(comp), temperature_k);
}

std::string GroundTruth::to_text() const {
  std::string s;
  s += "law: log10_eta = a + b / (T - c); k = k0 + sum_i k_i * mass_percent_i / 100\n";
  s += fmt::format("a0: {}\n", base.a);
  s += fmt::format("b0: {}\n", base.b);
  s += fmt::format("c0: {}\n", base.c);
  const auto emit = [&](std::string_view key, const std::array<double, kSpeciesCount>& v) {
    for (std::size_t i = 0; i < kSpeciesCount; ++i) s += fmt::format("{}.{}: {}\n", key, kSpeciesNames[i], v[i]);
  };
  emit("a", a_sensitivity);
  emit("b", b_sensitivity);
  emit("c", c_sensitivity);
  s += fmt::format("noise: {}\n", noise);
  s += fmt::format("seed: {}\n", seed);
  return s;
}

namespace {

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::CorruptFile, "bad number for '" + key + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

GroundTruth GroundTruth::from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    kv[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
  }
  const auto get = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::CorruptFile, "ground truth lacks '" + key + "'");
    return parse_double(key, it->second);
  };
  GroundTruth g;
  g.base = {get("a0"), get("b0"), get("c0")};
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    const std::string name(kSpeciesNames[i]);
    g.a_sensitivity[i] = get("a." + name);
    g.b_sensitivity[i] = get("b." + name);
    g.c_sensitivity[i] = get("c." + name);
  }
  g.noise = get("noise");
  const auto it = kv.find("seed");
  if (it == kv.end()) throw Error(ErrorCode::CorruptFile, "ground truth lacks 'seed'");
  const auto [ptr, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), g.seed);
  if (ec != std::errc()) throw Error(ErrorCode::CorruptFile, "bad seed");
  return g;
}

SynthResult generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  SynthResult out;
  out.truth = GroundTruth{spec.base, spec.a_sensitivity, spec.b_sensitivity, spec.c_sensitivity, spec.noise, spec.seed};
  out.raw.stage = Stage::Raw;
  out.raw.provenance = fmt::format("synthetic VFT family, seed {}", spec.seed);
  out.raw.samples.reserve(spec.samples);

  Rng rng(derive_seed(spec.seed, "synth"));
  std::array<bool, kSpeciesCount> is_active{};
  for (Species s : spec.active) is_active[index_of(s)] = true;

  constexpr double kLiquidusMargin = 1.0;  // K
  while (out.raw.samples.size() < spec.samples) {
    std::array<double, kSpeciesCount> mass{};
    double trace_total = 0.0;
    for (std::size_t i = 0; i < kSpeciesCount; ++i) {
      if (!is_active[i]) {
        mass[i] = rng.uniform(0.0, spec.trace_max);
        trace_total += mass[i];
      }
    }
    // Normalized Gamma(concentration, 1) draws, each a sum of exponentials.
    double e_total = 0.0;
    std::array<double, kSpeciesCount> e{};
    for (Species s : spec.active) {
      for (unsigned k = 0; k < spec.concentration; ++k) {
        double u = rng.uniform01();
        while (u <= 0.0) u = rng.uniform01();
        e[index_of(s)] -= std::log(u);
      }
      e_total += e[index_of(s)];
    }
    for (Species s : spec.active) mass[index_of(s)] = (100.0 - trace_total) * e[index_of(s)] / e_total;

    const Composition comp(mass);
    const double t_low = std::max(spec.temperature_min, liquidus_temperature(comp) + kLiquidusMargin);
    if (!(t_low < spec.temperature_max)) continue;  // composition melts above the range; redraw
    const double t = rng.uniform(t_low, spec.temperature_max);
    const double z = rng.normal();
    const double log_eta = out.truth.log10_eta(comp, t) + spec.noise * z;
    out.raw.samples.push_back({comp, t, std::pow(10.0, log_eta)});
  }
  return out;
}

}  // namespace meltvisc
