#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "meltvisc/dataset.hpp"

namespace meltvisc {

/// Quantile by linear interpolation between closest order statistics
/// (h = (n − 1) p). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// Outlier bounds derived from the interquartile range. Samples are kept
/// when lower < key < upper.
struct Fences {
  double lower = 0.0;
  double upper = 0.0;

  bool degenerate() const noexcept { return !(lower < upper); }
};

/// Multipliers applied to the IQR below Q1 and above Q3. The defaults are
/// deliberately asymmetric.
inline constexpr double kLowerFenceMultiplier = 1.5;
inline constexpr double kUpperFenceMultiplier = 1.0;

/// lower = Q1 − 1.5 IQR, upper = Q3 + 1.0 IQR. Throws Error{EmptyInput}.
Fences iqr_fences(std::span<const double> values);

using SampleKey = std::function<double(const Sample&)>;

/// NBO/T of a sample's composition.
double nbo_t_key(const Sample& s);
/// log10 viscosity regardless of stage.
double log10_viscosity_key(const Sample& s, Stage stage);

/// Keeps samples strictly inside the fences, preserving order. Degenerate
/// fences (IQR = 0) keep every sample.
Dataset filter_by_fences(const Dataset& ds, const SampleKey& key, const Fences& fences);

/// Keeps samples whose temperature is strictly above their liquidus estimate.
Dataset filter_liquidus(const Dataset& ds);

/// Raw -> Processed: target becomes log10(viscosity).
/// Throws Error{NonPositiveViscosity} or Error{StageMismatch}.
Dataset log_transform(const Dataset& ds);

/// Drops samples whose full record is bitwise equal to an earlier one.
Dataset deduplicate(const Dataset& ds);

/// Per-predictor z-score parameters over the 20 predictors.
struct Scaler {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> stddev{};

  friend bool operator==(const Scaler&, const Scaler&) = default;
};

/// Mean and sample (N − 1) standard deviation of every predictor. The target
/// is not scaled. Throws Error{TooSmall} for < 2 samples,
/// Error{ConstantFeature} when a predictor has zero spread,
/// Error{StageMismatch} for raw data.
Scaler fit_scaler(const Dataset& ds);

/// Unscaled predictor matrix, one row per sample.
Eigen::MatrixXd feature_matrix(const Dataset& ds);
Eigen::VectorXd target_vector(const Dataset& ds);

/// z = (x − μ) / σ column-wise. Throws Error{ShapeMismatch} on width != 20.
Eigen::MatrixXd apply_scaler(const Scaler& sc, const Eigen::MatrixXd& x);
Eigen::MatrixXd apply_scaler(const Scaler& sc, const Dataset& ds);
Eigen::MatrixXd inverse_scaler(const Scaler& sc, const Eigen::MatrixXd& z);

struct SplitSpec {
  double train = 0.81;
  double validation = 0.09;
  double test = 0.10;
  std::uint64_t seed = 0;

  /// Throws Error{InvalidConfig} unless all fractions are positive and sum to 1.
  void validate() const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// train = floor(f_train N), validation = floor(f_val N), test = remainder.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

/// Seeded permutation of 0..n−1 used by split().
std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed);

struct SplitDatasets {
  Dataset train;
  Dataset validation;
  Dataset test;
};

/// Seeded shuffle, then contiguous partition. Throws Error{TooSmall} for N < 10.
SplitDatasets split(const Dataset& ds, const SplitSpec& spec);

struct StageCount {
  std::string stage;
  std::size_t rows = 0;
};

struct PipelineReport {
  std::vector<StageCount> stages;
  Fences nbo_t_fences;
  Fences viscosity_fences;  // on log10 viscosity
  double log10_viscosity_mean = 0.0;
  double log10_viscosity_stddev = 0.0;  // sample (N − 1)
  SplitSizes split;

  /// "key: value" lines.
  std::string to_text() const;
};

struct PreprocessConfig {
  SplitSpec split;
  RoleTable roles = kDefaultRoles;
};

struct PreprocessResult {
  Dataset processed;  // after dedup, before split
  Scaler scaler;
  SplitDatasets parts;
  PipelineReport report;
};

/// NBO/T fences -> liquidus -> log10 viscosity fences -> log transform ->
/// deduplicate -> fit scaler -> split. Stage errors propagate.
PreprocessResult preprocess(const Dataset& raw, const PreprocessConfig& config);

}  // namespace meltvisc
