#include <gtest/gtest.h>

#include "meltvisc/baselines.hpp"
#include "meltvisc/error.hpp"
#include "meltvisc/pipeline.hpp"
#include "meltvisc/random.hpp"

namespace meltvisc {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

TEST(Vft, Examples) {
  EXPECT_EQ(vft_log10_eta({1.0, 0.0, 0.0}, 1234.0), 1.0);
  EXPECT_EQ(vft_log10_eta({-3.0, 6000.0, 500.0}, 1500.0), 3.0);
  EXPECT_EQ(code_of([] { vft_log10_eta({0.0, 1.0, 500.0}, 500.0); }), ErrorCode::Singularity);
}

TEST(Vft, DecreasingInTemperature) {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    const VftParams p{rng.uniform(-5.0, 0.0), rng.uniform(100.0, 10000.0), rng.uniform(0.0, 800.0)};
    double prev = vft_log10_eta(p, p.c + 1.0);
    for (double t = p.c + 2.0; t < 3000.0; t += 37.0) {
      const double now = vft_log10_eta(p, t);
      EXPECT_LT(now, prev);
      prev = now;
    }
  }
}

TEST(Arrhenius, Examples) {
  EXPECT_EQ(arrhenius_log10_eta(0.0, 1500.0, 1500.0), 1.0);
  EXPECT_EQ(code_of([] { arrhenius_log10_eta(0.0, 1.0, 0.0); }), ErrorCode::NonPositiveTemperature);
  Rng rng(62);
  for (int k = 0; k < 500; ++k) {
    const double a = rng.uniform(-5.0, 5.0), b = rng.uniform(-1e4, 1e4), t = rng.uniform(1.0, 3000.0);
    EXPECT_NEAR(arrhenius_log10_eta(a, b, t), vft_log10_eta({a, b, 0.0}, t), 1e-15);
  }
}

TEST(RoscoeEinstein, Examples) {
  EXPECT_EQ(roscoe_einstein(3.0, {2.0, -2.5, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(roscoe_einstein(2.0, {1.0, 2.0, 0.5}), 0.5);
  EXPECT_EQ(code_of([] { roscoe_einstein(1.0, {2.0, 1.0, 0.5}); }), ErrorCode::InvalidSuspension);
  EXPECT_EQ(code_of([] { roscoe_einstein(0.0, {1.0, 1.0, 0.1}); }), ErrorCode::NonPositiveViscosity);
  EXPECT_EQ(code_of([] { roscoe_einstein(1.0, {0.1, 1.0, 1.0}); }), ErrorCode::InvalidSuspension);
}

TEST(RoscoeEinstein, SolidsRaiseViscosityForNegativeExponent) {
  double prev = roscoe_einstein(1.0, {1.35, -2.5, 0.0});
  for (double c = 0.01; c < 0.7; c += 0.01) {
    const double now = roscoe_einstein(1.0, {1.35, -2.5, c});
    EXPECT_GT(now, prev);
    prev = now;
  }
}

TEST(Synthetic, NoiseFreeTargetsReproduceFromTruth) {
  SynthSpec spec = default_synth_spec();
  spec.samples = 300;
  spec.seed = 3;
  const SynthResult r = generate_synthetic(spec);
  ASSERT_EQ(r.raw.size(), 300u);
  const GroundTruth reread = GroundTruth::from_text(r.truth.to_text());
  for (const Sample& s : r.raw.samples) {
    EXPECT_EQ(s.target, std::pow(10.0, reread.log10_eta(s.composition, s.temperature_k)));
  }
}

TEST(Synthetic, DeterministicAndAboveLiquidus) {
  SynthSpec spec = default_synth_spec();
  spec.seed = 4;
  const SynthResult a = generate_synthetic(spec);
  const SynthResult b = generate_synthetic(spec);
  EXPECT_EQ(a.raw.samples, b.raw.samples);
  ASSERT_EQ(a.raw.size(), 2000u);
  for (const Sample& s : a.raw.samples) {
    EXPECT_GT(s.temperature_k, liquidus_temperature(s.composition));
    EXPECT_GE(s.temperature_k, spec.temperature_min);
    EXPECT_LE(s.temperature_k, spec.temperature_max);
    EXPECT_NEAR(s.composition.total(), 100.0, 1e-9);
  }
  EXPECT_EQ(filter_liquidus(a.raw).size(), a.raw.size());
  spec.seed = 5;
  EXPECT_NE(generate_synthetic(spec).raw.samples, a.raw.samples);
}

TEST(Synthetic, NoiseChangesTargetsOnly) {
  SynthSpec spec = default_synth_spec();
  spec.samples = 100;
  const SynthResult clean = generate_synthetic(spec);
  spec.noise = 0.1;
  const SynthResult noisy = generate_synthetic(spec);
  double diff = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(clean.raw.samples[i].composition, noisy.raw.samples[i].composition);
    diff += std::abs(std::log10(noisy.raw.samples[i].target) - std::log10(clean.raw.samples[i].target));
  }
  EXPECT_GT(diff / 100.0, 0.03);
}

TEST(Synthetic, SpecValidation) {
  SynthSpec spec = default_synth_spec();
  spec.temperature_min = 1000.0;
  EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::InvalidConfig);
  spec = default_synth_spec();
  spec.samples = 0;
  EXPECT_THROW(spec.validate(), Error);
  spec = default_synth_spec();
  spec.active = {Species::SiO2, Species::SiO2};
  EXPECT_THROW(spec.validate(), Error);
  spec = default_synth_spec();
  spec.temperature_max = 3000.0;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(GroundTruth, TextRoundtripAndErrors) {
  const GroundTruth g = generate_synthetic([] {
                          SynthSpec s = default_synth_spec();
                          s.samples = 1;
                          return s;
                        }()).truth;
  const GroundTruth back = GroundTruth::from_text(g.to_text());
  EXPECT_EQ(back.b_sensitivity, g.b_sensitivity);
  EXPECT_EQ(back.base.c, g.base.c);
  EXPECT_EQ(code_of([] { GroundTruth::from_text("a0: 1\n"); }), ErrorCode::CorruptFile);
}

}  // namespace
}  // namespace meltvisc
