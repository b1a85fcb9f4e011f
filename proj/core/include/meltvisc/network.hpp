#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "meltvisc/dataset.hpp"
#include "meltvisc/pipeline.hpp"

namespace meltvisc {

/// Hidden-layer nonlinearity. Identity exists for linear test fixtures and
/// is not part of the searched hyperparameter space.
enum class Activation { ReLU, Sigmoid, Tanh, Identity };

enum class BiasInit { Zeros, Ones };

std::string_view to_string(Activation a) noexcept;
std::string_view to_string(BiasInit b) noexcept;
/// Accepts "relu", "sigmoid", "tanh", "identity" (case-insensitive).
Activation parse_activation(std::string_view name);
/// Accepts "zeros", "ones" (case-insensitive).
BiasInit parse_bias_init(std::string_view name);

/// Upper bound on the minimum width of a deep narrow network that still
/// approximates arbitrary continuous maps: d_x + d_y + 1.
/// Throws Error{InvalidCardinality} when either cardinality is 0.
std::size_t min_width_bound(std::size_t d_x, std::size_t d_y);

struct AdamSettings {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  std::size_t input_dim = kFeatureCount;
  std::size_t depth = 3;   // hidden layers
  std::size_t width = 22;  // neurons per hidden layer
  Activation activation = Activation::ReLU;
  BiasInit bias_init = BiasInit::Zeros;
  std::size_t max_epochs = 100000;
  std::size_t batch_size = 64;
  AdamSettings adam;
  /// Epochs without a strict improvement of validation MSE before stopping.
  std::size_t patience = 100;
  std::uint64_t seed = 0;

  /// Throws Error{InvalidConfig}.
  void validate() const;
};

/// 20 inputs, 3 hidden layers of 22 ReLU units, zero biases, batch 64.
TrainConfig default_train_config();

/// Dense feed-forward regressor with a single linear output.
///
/// weights[l] is fan_in x fan_out so a batch X (rows = samples) propagates as
/// X * W + b. activations has one entry per hidden layer, i.e.
/// weights.size() - 1 entries.
struct MlpModel {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::vector<Activation> activations;
  BiasInit bias_init = BiasInit::Zeros;
  /// Predictor scaling fitted during preprocessing; absent for bare nets.
  std::optional<Scaler> scaler;

  /// input, hidden..., output widths.
  std::vector<std::size_t> layer_dims() const;
  std::size_t input_dim() const { return static_cast<std::size_t>(weights.front().rows()); }
  std::size_t parameter_count() const;

  /// Throws Error{ShapeMismatch} or Error{InvalidValue}.
  void validate() const;
};

/// He-uniform weights in ±sqrt(6 / fan_in); constant biases per config.
MlpModel init_network(const TrainConfig& config);

/// Batch forward pass on scaled features. Returns one prediction per row.
/// Throws Error{ShapeMismatch} when x.cols() != input width.
Eigen::VectorXd forward(const MlpModel& model, const Eigen::MatrixXd& x);
double forward(const MlpModel& model, const Eigen::RowVectorXd& x);

/// Outputs of the last hidden layer, for activation-range checks.
Eigen::MatrixXd last_hidden(const MlpModel& model, const Eigen::MatrixXd& x);

/// Predictions from unscaled predictors (species %mass + temperature K)
/// through the attached scaler.
Eigen::VectorXd predict(const MlpModel& model, const Eigen::MatrixXd& raw_features);

/// Arrays shaped like a model's parameters.
struct ParameterSet {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static ParameterSet zeros_like(const MlpModel& model);
};

struct LossAndGradients {
  double loss = 0.0;  // MSE over the batch
  ParameterSet gradients;
};

/// MSE loss and its exact gradient with respect to every weight and bias.
LossAndGradients loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

struct AdamState {
  ParameterSet first_moment;
  ParameterSet second_moment;
  std::uint64_t step = 0;

  static AdamState for_model(const MlpModel& model);
};

/// One bias-corrected Adam update applied in place.
void adam_step(AdamState& state, MlpModel& model, const ParameterSet& gradients, const AdamSettings& settings);

/// Scaled predictors and log10 viscosity targets.
struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;

  Eigen::Index size() const { return y.size(); }
};

/// Scales a processed dataset with the given scaler.
RegressionData make_regression_data(const Dataset& ds, const Scaler& scaler);

/// Per-epoch curves; index e holds the metrics after epoch e + 1.
struct TrainHistory {
  std::vector<double> loss;
  std::vector<double> mae;
  std::vector<double> val_loss;
  std::vector<double> val_mae;
  std::size_t stop_epoch = 0;  // 1-based, epochs actually run
  std::size_t best_epoch = 0;  // 1-based

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

struct TrainResult {
  MlpModel model;  // parameters from the best validation epoch
  TrainHistory history;
};

/// Mini-batch Adam with seeded per-epoch reshuffling (last partial batch
/// kept) and early stopping on validation MSE. Returns the best-epoch
/// parameters. Throws Error{EmptySet} when either set is empty.
TrainResult train(const MlpModel& initial, const RegressionData& train_set, const RegressionData& val_set,
                  const TrainConfig& config);

struct GridResult {
  std::size_t index = 0;  // position in the input space
  TrainConfig config;
  double val_loss = 0.0;
  double val_mae = 0.0;
  std::size_t stop_epoch = 0;
  std::size_t best_epoch = 0;
};

/// Trains every config from its own seed and ranks by validation loss, then
/// validation MAE, then input position. Trials run on up to `jobs` threads;
/// the ranking does not depend on completion order.
std::vector<GridResult> grid_search(const std::vector<TrainConfig>& space, const RegressionData& train_set,
                                    const RegressionData& val_set, std::size_t jobs = 1);

}  // namespace meltvisc
