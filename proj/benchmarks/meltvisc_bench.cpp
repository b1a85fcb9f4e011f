#include <benchmark/benchmark.h>

#include "meltvisc/baselines.hpp"
#include "meltvisc/network.hpp"
#include "meltvisc/pipeline.hpp"
#include "meltvisc/random.hpp"
#include "meltvisc/sensitivity.hpp"

namespace {

using namespace meltvisc;

Eigen::MatrixXd random_batch(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x;
}

void BM_Forward(benchmark::State& state) {
  const MlpModel m = init_network(default_train_config());
  const Eigen::MatrixXd x = random_batch(state.range(0), 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward(m, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(64)->Arg(1024);

void BM_LossAndGradients(benchmark::State& state) {
  const MlpModel m = init_network(default_train_config());
  const Eigen::MatrixXd x = random_batch(state.range(0), 20, 2);
  const Eigen::VectorXd y = random_batch(state.range(0), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_gradients(m, x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LossAndGradients)->Arg(64)->Arg(1024);

void BM_AdamStep(benchmark::State& state) {
  MlpModel m = init_network(default_train_config());
  AdamState st = AdamState::for_model(m);
  const ParameterSet g =
      loss_and_gradients(m, random_batch(64, 20, 4), Eigen::VectorXd(random_batch(64, 1, 5))).gradients;
  for (auto _ : state) adam_step(st, m, g, AdamSettings{});
}
BENCHMARK(BM_AdamStep);

void BM_Preprocess(benchmark::State& state) {
  SynthSpec spec = default_synth_spec();
  spec.samples = static_cast<std::size_t>(state.range(0));
  const Dataset raw = generate_synthetic(spec).raw;
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(raw, PreprocessConfig{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Preprocess)->Arg(2000)->Arg(20000);

void BM_ConnectionWeights(benchmark::State& state) {
  const MlpModel m = init_network(default_train_config());
  for (auto _ : state) benchmark::DoNotOptimize(connection_weights(m));
}
BENCHMARK(BM_ConnectionWeights);

}  // namespace

BENCHMARK_MAIN();
