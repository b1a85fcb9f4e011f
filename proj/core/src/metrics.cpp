#include "meltvisc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "meltvisc/error.hpp"

namespace meltvisc {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("{} targets but {} predictions", a.size(), b.size()));
  }
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no values");
}

double mean_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

}  // namespace

double mse(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double s = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    s += d * d;
  }
  return s / static_cast<double>(y_true.size());
}

double mae(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double s = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) s += std::abs(y_true[i] - y_pred[i]);
  return s / static_cast<double>(y_true.size());
}

double error_std(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  if (y_true.size() < 2) throw Error(ErrorCode::TooFew, "error std needs at least 2 pairs");
  std::vector<double> alpha(y_true.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = std::abs(y_true[i] - y_pred[i]);
  const double mu = mean_of(alpha);
  double s = 0.0;
  for (double a : alpha) s += (a - mu) * (a - mu);
  return std::sqrt(s / static_cast<double>(alpha.size() - 1));
}

double r2(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  if (y_true.size() < 2) throw Error(ErrorCode::TooFew, "R² needs at least 2 pairs");
  const double mu = mean_of(y_true);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    ss_tot += (y_true[i] - mu) * (y_true[i] - mu);
  }
  if (!(ss_tot > 0.0)) throw Error(ErrorCode::ConstantTarget, "targets have zero variance");
  return 1.0 - ss_res / ss_tot;
}

std::vector<double> residuals(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  std::vector<double> e(y_true.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = y_pred[i] - y_true[i];
  return e;
}

ShapeStats shape_stats(std::span<const double> e) {
  if (e.size() < 3) throw Error(ErrorCode::TooFew, "skewness needs at least 3 residuals");
  const double mu = mean_of(e);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : e) {
    const double d = v - mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(e.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw Error(ErrorCode::ZeroVariance, "residuals have zero variance");
  ShapeStats s;
  s.skewness = m3 / std::pow(m2, 1.5);
  if (e.size() >= 4) s.kurtosis = m4 / (m2 * m2) - 3.0;
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  s.max_negative = *lo;
  s.max_positive = *hi;
  return s;
}

EvalReport evaluate(std::span<const double> y_pred, std::span<const double> y_true) {
  check_pair(y_true, y_pred);
  EvalReport r;
  r.n = y_true.size();
  r.mse = mse(y_true, y_pred);
  r.mae = mae(y_true, y_pred);
  r.std = error_std(y_true, y_pred);
  r.r2 = r2(y_true, y_pred);
  const auto e = residuals(y_true, y_pred);
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  r.max_negative_error = *lo;
  r.max_positive_error = *hi;
  try {
    const ShapeStats s = shape_stats(e);
    r.skewness = s.skewness;
    r.kurtosis = s.kurtosis;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::TooFew && err.code() != ErrorCode::ZeroVariance) throw;
  }
  return r;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : "nan"; }

}  // namespace

std::string to_text(const EvalReport& r) {
  std::string s;
  s += fmt::format("n: {}\n", r.n);
  s += fmt::format("mse: {:.17g}\n", r.mse);
  s += fmt::format("mae: {:.17g}\n", r.mae);
  s += fmt::format("std: {:.17g}\n", r.std);
  s += fmt::format("r2: {:.17g}\n", r.r2);
  s += fmt::format("skewness: {}\n", opt(r.skewness));
  s += fmt::format("kurtosis: {}\n", opt(r.kurtosis));
  s += fmt::format("max_negative_error: {:.17g}\n", r.max_negative_error);
  s += fmt::format("max_positive_error: {:.17g}\n", r.max_positive_error);
  return s;
}

std::vector<ComparisonRow> compare_models(const std::vector<NamedPredictions>& models,
                                          std::span<const double> y_true) {
  std::vector<ComparisonRow> rows;
  rows.reserve(models.size());
  for (const auto& m : models) {
    if (m.predictions.size() != y_true.size()) {
      throw Error(ErrorCode::MisalignedPredictions,
                  fmt::format("model '{}' has {} predictions for {} test rows", m.name, m.predictions.size(),
                              y_true.size()));
    }
    rows.push_back({0, m.name, evaluate(m.predictions, y_true)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) { return a.report.mae < b.report.mae; });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string s = "rank,model,n,mae,std,r2,skewness,kurtosis,max_negative_error,max_positive_error\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    s += fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{},{},{:.17g},{:.17g}\n", row.rank, row.name, r.n, r.mae, r.std,
                     r.r2, opt(r.skewness), opt(r.kurtosis), r.max_negative_error, r.max_positive_error);
  }
  return s;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
  constexpr int label_width = 34;
  std::size_t col = 12;
  for (const auto& row : rows) col = std::max(col, row.name.size() + 2);
  const auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : std::string("-"); };

  std::string s = fmt::format("{:<{}}", "Model", label_width);
  for (const auto& row : rows) s += fmt::format("{:>{}}", row.name, col);
  s += '\n';
  const auto line = [&](std::string_view label, auto&& get) {
    s += fmt::format("{:<{}}", label, label_width);
    for (const auto& row : rows) s += fmt::format("{:>{}}", get(row.report), col);
    s += '\n';
  };
  line("Mean Absolute Error (log10 eta)", [&](const EvalReport& r) { return cell(r.mae); });
  line("Standard Deviation (log10 eta)", [&](const EvalReport& r) { return cell(r.std); });
  line("Coefficient of Determination", [&](const EvalReport& r) { return cell(r.r2); });
  line("Skewness", [&](const EvalReport& r) { return cell(r.skewness); });
  line("Kurtosis (excess)", [&](const EvalReport& r) { return cell(r.kurtosis); });
  line("Max. negative error (log10 eta)", [&](const EvalReport& r) { return cell(r.max_negative_error); });
  line("Max. positive error (log10 eta)", [&](const EvalReport& r) { return cell(r.max_positive_error); });
  return s;
}

}  // namespace meltvisc
