#include "meltvisc/random.hpp"

#include <cmath>
#include <numbers>

namespace meltvisc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view stage) noexcept {
  // FNV-1a over the stage tag, then mixed with the base seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : stage) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(base ^ splitmix64(h));
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

double Rng::normal() noexcept {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace meltvisc
