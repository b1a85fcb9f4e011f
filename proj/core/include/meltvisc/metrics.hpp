#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace meltvisc {

// All functions take (y_true, y_pred) in log10 viscosity units and throw
// Error{EmptyInput} / Error{LengthMismatch} on bad shapes.

/// (1/N) Σ (y_true − y_pred)^2
double mse(std::span<const double> y_true, std::span<const double> y_pred);

/// (1/N) Σ |y_true − y_pred|
double mae(std::span<const double> y_true, std::span<const double> y_pred);

/// Sample standard deviation (N − 1) of the absolute errors
/// α = |y_true − y_pred|. Throws Error{TooFew} for N < 2.
double error_std(std::span<const double> y_true, std::span<const double> y_pred);

/// 1 − SS_res / SS_tot. Throws Error{TooFew} for N < 2 and
/// Error{ConstantTarget} when y_true has no spread.
double r2(std::span<const double> y_true, std::span<const double> y_pred);

/// Residuals e = y_pred − y_true (positive = over-prediction).
std::vector<double> residuals(std::span<const double> y_true, std::span<const double> y_pred);

struct ShapeStats {
  /// g1 = m3 / m2^1.5 with population central moments.
  double skewness = 0.0;
  /// Excess kurtosis g2 = m4 / m2^2 − 3; needs N >= 4.
  std::optional<double> kurtosis;
  double max_negative = 0.0;  // min residual
  double max_positive = 0.0;  // max residual
};

/// Throws Error{TooFew} for N < 3 and Error{ZeroVariance} for constant residuals.
ShapeStats shape_stats(std::span<const double> residuals);

struct EvalReport {
  std::size_t n = 0;
  double mse = 0.0;
  double mae = 0.0;
  double std = 0.0;
  double r2 = 0.0;
  /// Absent when the residuals are too few or have no spread.
  std::optional<double> skewness;
  std::optional<double> kurtosis;
  double max_negative_error = 0.0;
  double max_positive_error = 0.0;
};

/// Every statistic above on one aligned prediction/target pair.
EvalReport evaluate(std::span<const double> y_pred, std::span<const double> y_true);

/// "key: value" lines.
std::string to_text(const EvalReport& r);

struct NamedPredictions {
  std::string name;
  std::vector<double> predictions;
};

struct ComparisonRow {
  std::size_t rank = 0;  // 1-based, by MAE
  std::string name;
  EvalReport report;
};

/// One report per model, ranked by ascending MAE (stable for ties).
/// Throws Error{MisalignedPredictions} when a set's length differs from y_true.
std::vector<ComparisonRow> compare_models(const std::vector<NamedPredictions>& models,
                                          std::span<const double> y_true);

/// One row per model: rank,model,n,mae,std,r2,skewness,kurtosis,max_negative_error,max_positive_error.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

/// Metrics as rows, models as columns, in rank order.
std::string comparison_table(const std::vector<ComparisonRow>& rows);

}  // namespace meltvisc
