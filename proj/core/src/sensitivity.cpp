#include "meltvisc/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "meltvisc/error.hpp"

namespace meltvisc {

SensitivityReport connection_weights(const MlpModel& model) {
  model.validate();
  Eigen::MatrixXd product = model.weights.front();
  for (std::size_t l = 1; l < model.weights.size(); ++l) product = product * model.weights[l];

  SensitivityReport r;
  const auto n = static_cast<std::size_t>(product.rows());
  r.raw.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.raw[i] = product(static_cast<Eigen::Index>(i), 0);

  double total = 0.0;
  for (double v : r.raw) total += std::abs(v);
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateModel, "all connection-weight products are zero");

  r.relative.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.relative[i] = 100.0 * r.raw[i] / total;

  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(r.raw[a]) > std::abs(r.raw[b]); });
  r.rank.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) r.rank[r.order[pos]] = pos + 1;
  return r;
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::DirectlyProportional: return "directly_proportional";
    case Direction::InverselyProportional: return "inversely_proportional";
    case Direction::Neutral: return "neutral";
  }
  return "?";
}

Direction interpret_sign(double raw) noexcept {
  if (raw > 0.0) return Direction::DirectlyProportional;
  if (raw < 0.0) return Direction::InverselyProportional;
  return Direction::Neutral;
}

std::vector<Direction> interpret_sign(const SensitivityReport& report) {
  std::vector<Direction> d;
  d.reserve(report.raw.size());
  for (double v : report.raw) d.push_back(interpret_sign(v));
  return d;
}

std::vector<std::string> input_names(std::size_t input_count) {
  std::vector<std::string> names;
  if (input_count == kFeatureCount) {
    for (auto s : kSpeciesNames) names.emplace_back(s);
    names.emplace_back("T");
    return names;
  }
  for (std::size_t i = 0; i < input_count; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string sensitivity_csv(const SensitivityReport& report) {
  const auto names = input_names(report.raw.size());
  std::ostringstream os;
  os.precision(17);
  os << "input,raw,relative_percent,rank,direction\n";
  for (std::size_t i = 0; i < report.raw.size(); ++i) {
    os << names[i] << ',' << report.raw[i] << ',' << report.relative[i] << ',' << report.rank[i] << ','
       << to_string(interpret_sign(report.raw[i])) << '\n';
  }
  return os.str();
}

double mean_input_slope(const MlpModel& model, const Eigen::MatrixXd& raw_features, Eigen::Index input, double step) {
  if (raw_features.rows() == 0) throw Error(ErrorCode::EmptyInput, "no rows to differentiate over");
  if (input < 0 || input >= raw_features.cols()) throw Error(ErrorCode::ShapeMismatch, "input index out of range");
  Eigen::MatrixXd plus = raw_features, minus = raw_features;
  plus.col(input).array() += step;
  minus.col(input).array() -= step;
  const Eigen::VectorXd slope = (predict(model, plus) - predict(model, minus)) / (2.0 * step);
  return slope.mean();
}

}  // namespace meltvisc
