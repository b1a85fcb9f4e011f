#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "meltvisc/network.hpp"

namespace meltvisc {

/// Connection-weights variable importance.
///
/// The raw score of input i is the i-th entry of W_1 W_2 ... W_out, i.e. the
/// sum over every input-to-output path of the product of its weights. For one
/// hidden layer this is the usual Σ_h w_ih w_ho; deeper nets use the full
/// matrix product. Biases and activations do not enter.
struct SensitivityReport {
  std::vector<double> raw;
  /// 100 · raw_i / Σ_j |raw_j|; signs are kept.
  std::vector<double> relative;
  /// Input indices ordered by decreasing |raw| (ties by index).
  std::vector<std::size_t> order;
  /// rank[i] is the 1-based position of input i in `order`.
  std::vector<std::size_t> rank;
};

/// Throws Error{DegenerateModel} when every raw score is zero.
SensitivityReport connection_weights(const MlpModel& model);

enum class Direction { DirectlyProportional, InverselyProportional, Neutral };

std::string_view to_string(Direction d) noexcept;

Direction interpret_sign(double raw) noexcept;
std::vector<Direction> interpret_sign(const SensitivityReport& report);

/// Input labels for the standard 20-input model: species names then "T".
std::vector<std::string> input_names(std::size_t input_count);

/// CSV with columns input,raw,relative_percent,rank,direction.
std::string sensitivity_csv(const SensitivityReport& report);

/// Mean central-difference slope of the prediction with respect to one
/// unscaled predictor (e.g. temperature in K), over the rows of
/// `raw_features`. Uses the model's attached scaler when present.
double mean_input_slope(const MlpModel& model, const Eigen::MatrixXd& raw_features, Eigen::Index input, double step);

}  // namespace meltvisc
