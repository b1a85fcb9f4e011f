#include "meltvisc/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "meltvisc/error.hpp"
#include "meltvisc/random.hpp"

namespace meltvisc {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyInput, "quantile of empty sequence");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Fences iqr_fences(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "cannot compute fences of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidValue, "fence input must be finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;
  return {q1 - kLowerFenceMultiplier * iqr, q3 + kUpperFenceMultiplier * iqr};
}

double nbo_t_key(const Sample& s) { return nbo_t(s.composition); }

double log10_viscosity_key(const Sample& s, Stage stage) {
  if (stage == Stage::Processed) return s.target;
  if (!(s.target > 0.0)) throw Error(ErrorCode::NonPositiveViscosity, "viscosity must be > 0 Pa·s");
  return std::log10(s.target);
}

Dataset filter_by_fences(const Dataset& ds, const SampleKey& key, const Fences& fences) {
  if (fences.degenerate()) return ds;
  Dataset out{ds.stage, {}, ds.provenance};
  for (const Sample& s : ds.samples) {
    const double k = key(s);
    if (fences.lower < k && k < fences.upper) out.samples.push_back(s);
  }
  return out;
}

Dataset filter_liquidus(const Dataset& ds) {
  Dataset out{ds.stage, {}, ds.provenance};
  for (const Sample& s : ds.samples) {
    if (s.temperature_k > liquidus_temperature(s.composition)) out.samples.push_back(s);
  }
  return out;
}

Dataset log_transform(const Dataset& ds) {
  if (ds.stage != Stage::Raw) throw Error(ErrorCode::StageMismatch, "log transform expects raw data");
  Dataset out{Stage::Processed, ds.samples, ds.provenance};
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double& eta = out.samples[i].target;
    if (!(eta > 0.0)) {
      throw Error(ErrorCode::NonPositiveViscosity, "sample " + std::to_string(i) + ": viscosity " +
                                                       std::to_string(eta) + " Pa·s");
    }
    eta = std::log10(eta);
  }
  return out;
}

Dataset deduplicate(const Dataset& ds) {
  using Key = std::array<std::uint64_t, kFeatureCount + 1>;
  std::set<Key> seen;
  Dataset out{ds.stage, {}, ds.provenance};
  for (const Sample& s : ds.samples) {
    Key key{};
    const auto f = s.features();
    for (std::size_t i = 0; i < kFeatureCount; ++i) key[i] = std::bit_cast<std::uint64_t>(f[i]);
    key[kFeatureCount] = std::bit_cast<std::uint64_t>(s.target);
    if (seen.insert(key).second) out.samples.push_back(s);
  }
  return out;
}

Scaler fit_scaler(const Dataset& ds) {
  if (ds.stage != Stage::Processed) throw Error(ErrorCode::StageMismatch, "scaler is fitted on processed data");
  if (ds.size() < 2) {
    throw Error(ErrorCode::TooSmall, "scaler needs at least 2 samples, got " + std::to_string(ds.size()));
  }
  Scaler sc;
  const double n = static_cast<double>(ds.size());
  for (const Sample& s : ds.samples) {
    const auto f = s.features();
    for (std::size_t j = 0; j < kFeatureCount; ++j) sc.mean[j] += f[j];
  }
  for (double& m : sc.mean) m /= n;
  std::array<double, kFeatureCount> ss{};
  for (const Sample& s : ds.samples) {
    const auto f = s.features();
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const double d = f[j] - sc.mean[j];
      ss[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    sc.stddev[j] = std::sqrt(ss[j] / (n - 1.0));
    if (!(sc.stddev[j] > 0.0)) {
      const std::string name = j < kSpeciesCount ? std::string(kSpeciesNames[j]) : "temperature_k";
      throw Error(ErrorCode::ConstantFeature, "predictor '" + name + "' has zero standard deviation");
    }
  }
  return sc;
}

Eigen::MatrixXd feature_matrix(const Dataset& ds) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(ds.size()), static_cast<Eigen::Index>(kFeatureCount));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto f = ds.samples[i].features();
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[j];
    }
  }
  return x;
}

Eigen::VectorXd target_vector(const Dataset& ds) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(ds.size()));
  for (std::size_t i = 0; i < ds.size(); ++i) y(static_cast<Eigen::Index>(i)) = ds.samples[i].target;
  return y;
}

namespace {

void check_width(const Eigen::MatrixXd& m) {
  if (m.cols() != static_cast<Eigen::Index>(kFeatureCount)) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected " + std::to_string(kFeatureCount) + " columns, got " + std::to_string(m.cols()));
  }
}

}  // namespace

Eigen::MatrixXd apply_scaler(const Scaler& sc, const Eigen::MatrixXd& x) {
  check_width(x);
  Eigen::MatrixXd z(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    z.col(j) = (x.col(j).array() - sc.mean[ju]) / sc.stddev[ju];
  }
  return z;
}

Eigen::MatrixXd apply_scaler(const Scaler& sc, const Dataset& ds) { return apply_scaler(sc, feature_matrix(ds)); }

Eigen::MatrixXd inverse_scaler(const Scaler& sc, const Eigen::MatrixXd& z) {
  check_width(z);
  Eigen::MatrixXd x(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    x.col(j) = z.col(j).array() * sc.stddev[ju] + sc.mean[ju];
  }
  return x;
}

void SplitSpec::validate() const {
  if (!(train > 0.0 && validation > 0.0 && test > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "split fractions must be positive");
  }
  if (std::abs(train + validation + test - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidConfig, "split fractions must sum to 1");
  }
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  // The epsilon absorbs products like 0.81 * 100 landing a hair below 81.
  const auto part = [n](double f) {
    return static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
  };
  SplitSizes s;
  s.train = part(spec.train);
  s.validation = part(spec.validation);
  s.test = n - s.train - s.validation;
  return s;
}

std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(std::span<std::size_t>(perm));
  return perm;
}

SplitDatasets split(const Dataset& ds, const SplitSpec& spec) {
  if (ds.size() < 10) {
    throw Error(ErrorCode::TooSmall, "split needs at least 10 samples, got " + std::to_string(ds.size()));
  }
  const SplitSizes sizes = split_sizes(ds.size(), spec);
  const auto perm = split_permutation(ds.size(), spec.seed);
  SplitDatasets out{{ds.stage, {}, ds.provenance + " [train]"},
                    {ds.stage, {}, ds.provenance + " [validation]"},
                    {ds.stage, {}, ds.provenance + " [test]"}};
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const Sample& s = ds.samples[perm[i]];
    if (i < sizes.train) {
      out.train.samples.push_back(s);
    } else if (i < sizes.train + sizes.validation) {
      out.validation.samples.push_back(s);
    } else {
      out.test.samples.push_back(s);
    }
  }
  return out;
}

std::string PipelineReport::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& st : stages) os << "rows_" << st.stage << ": " << st.rows << '\n';
  os << "nbo_t_fence_lower: " << nbo_t_fences.lower << '\n';
  os << "nbo_t_fence_upper: " << nbo_t_fences.upper << '\n';
  os << "log10_viscosity_fence_lower: " << viscosity_fences.lower << '\n';
  os << "log10_viscosity_fence_upper: " << viscosity_fences.upper << '\n';
  os << "log10_viscosity_mean: " << log10_viscosity_mean << '\n';
  os << "log10_viscosity_std: " << log10_viscosity_stddev << '\n';
  os << "split_train: " << split.train << '\n';
  os << "split_validation: " << split.validation << '\n';
  os << "split_test: " << split.test << '\n';
  return os.str();
}

namespace {

std::vector<double> keys_of(const Dataset& ds, const SampleKey& key) {
  std::vector<double> k;
  k.reserve(ds.size());
  for (const Sample& s : ds.samples) k.push_back(key(s));
  return k;
}

}  // namespace

PreprocessResult preprocess(const Dataset& raw, const PreprocessConfig& config) {
  if (raw.stage != Stage::Raw) throw Error(ErrorCode::StageMismatch, "preprocess expects raw data");
  config.split.validate();
  PreprocessResult r;
  r.report.stages.push_back({"input", raw.size()});

  const SampleKey nbo = [&config](const Sample& s) { return nbo_t(s.composition, config.roles); };
  Dataset ds = raw;
  if (!ds.empty()) {
    r.report.nbo_t_fences = iqr_fences(keys_of(ds, nbo));
    ds = filter_by_fences(ds, nbo, r.report.nbo_t_fences);
  }
  r.report.stages.push_back({"nbo_t_filter", ds.size()});

  ds = filter_liquidus(ds);
  r.report.stages.push_back({"liquidus_filter", ds.size()});

  const SampleKey log_eta = [](const Sample& s) { return log10_viscosity_key(s, Stage::Raw); };
  if (!ds.empty()) {
    r.report.viscosity_fences = iqr_fences(keys_of(ds, log_eta));
    ds = filter_by_fences(ds, log_eta, r.report.viscosity_fences);
  }
  r.report.stages.push_back({"viscosity_filter", ds.size()});

  ds = log_transform(ds);
  r.report.stages.push_back({"log_transform", ds.size()});

  ds = deduplicate(ds);
  r.report.stages.push_back({"deduplicate", ds.size()});

  if (ds.size() < 10) {
    throw Error(ErrorCode::TooSmall, "only " + std::to_string(ds.size()) + " samples survive preprocessing");
  }
  const auto y = ds.targets();
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  r.report.log10_viscosity_mean = mean;
  r.report.log10_viscosity_stddev = std::sqrt(ss / (n - 1.0));

  r.scaler = fit_scaler(ds);
  r.parts = split(ds, config.split);
  r.report.split = split_sizes(ds.size(), config.split);
  r.processed = std::move(ds);
  return r;
}

}  // namespace meltvisc
