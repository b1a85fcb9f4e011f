#pragma once

#include <cmath>
#include <vector>

#include "meltvisc/dataset.hpp"
#include "meltvisc/network.hpp"
#include "meltvisc/random.hpp"

namespace fixtures {

using namespace meltvisc;

// CaO/SiO2/Al2O3 melt with every other species at a small varying level,
// well above its liquidus.
inline Sample random_sample(Rng& rng, Stage stage) {
  std::array<double, kSpeciesCount> mass{};
  double trace = 0.0;
  for (std::size_t i = 0; i < kSpeciesCount; ++i) {
    mass[i] = rng.uniform(0.0, 0.5);
    trace += mass[i];
  }
  const double silica = rng.uniform(35.0, 50.0);
  const double alumina = rng.uniform(5.0, 15.0);
  mass[index_of(Species::SiO2)] = silica;
  mass[index_of(Species::Al2O3)] = alumina;
  mass[index_of(Species::CaO)] = 100.0 - trace - silica - alumina + mass[index_of(Species::CaO)];
  const double t = rng.uniform(1700.0, 2000.0);
  const double log_eta = rng.uniform(-1.0, 1.0);
  return {Composition(mass), t, stage == Stage::Raw ? std::pow(10.0, log_eta) : log_eta};
}

inline Dataset random_dataset(std::size_t n, std::uint64_t seed, Stage stage = Stage::Processed) {
  Rng rng(seed);
  Dataset ds{stage, {}, "fixture"};
  for (std::size_t i = 0; i < n; ++i) ds.samples.push_back(random_sample(rng, stage));
  return ds;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng, double lo = -1.0,
                                     double hi = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
  }
  return m;
}

inline MlpModel random_model(const std::vector<std::size_t>& dims, Activation act, Rng& rng) {
  MlpModel m;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    m.weights.push_back(random_matrix(static_cast<Eigen::Index>(dims[l]), static_cast<Eigen::Index>(dims[l + 1]), rng));
    m.biases.push_back(random_matrix(static_cast<Eigen::Index>(dims[l + 1]), 1, rng, -0.5, 0.5));
    if (l + 2 < dims.size()) m.activations.push_back(act);
  }
  return m;
}

}  // namespace fixtures
