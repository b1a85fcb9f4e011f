#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace meltvisc {

/// Derives an independent 64-bit seed for a named stage from a base seed.
/// Every stochastic stage (split, init, shuffling, synthesis) draws from its
/// own substream so rerunning one stage does not perturb the others.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stage) noexcept;

/// Seeded generator whose draws are identical across standard libraries.
/// std::uniform_*_distribution and std::shuffle are implementation-defined,
/// so the few distributions needed here are built on the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal via Box-Muller.
  double normal() noexcept;

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace meltvisc
