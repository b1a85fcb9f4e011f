#pragma once

// Brute-force reference implementations used only by tests. Each one is
// written from the defining formula, without calling the library routine
// it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Type-7 quantile: h = (n-1)p, interpolate between floor(h) and floor(h)+1.
inline double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct Fences {
  double lower;
  double upper;
};

inline Fences fences(const std::vector<double>& v) {
  const double q1 = quantile(v, 0.25);
  const double q3 = quantile(v, 0.75);
  return {q1 - 1.5 * (q3 - q1), q3 + 1.0 * (q3 - q1)};
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double mse(const std::vector<double>& t, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += (t[i] - p[i]) * (t[i] - p[i]);
  return s / static_cast<double>(t.size());
}

inline double mae(const std::vector<double>& t, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += std::abs(t[i] - p[i]);
  return s / static_cast<double>(t.size());
}

inline double error_std(const std::vector<double>& t, const std::vector<double>& p) {
  std::vector<double> a(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) a[i] = std::abs(t[i] - p[i]);
  return sample_std(a);
}

inline double r2(const std::vector<double>& t, const std::vector<double>& p) {
  const double m = mean(t);
  double res = 0.0, tot = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    res += (t[i] - p[i]) * (t[i] - p[i]);
    tot += (t[i] - m) * (t[i] - m);
  }
  return 1.0 - res / tot;
}

inline double central_moment(const std::vector<double>& v, int k) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += std::pow(x - m, k);
  return s / static_cast<double>(v.size());
}

inline double skewness(const std::vector<double>& e) {
  return central_moment(e, 3) / std::pow(central_moment(e, 2), 1.5);
}

inline double excess_kurtosis(const std::vector<double>& e) {
  const double m2 = central_moment(e, 2);
  return central_moment(e, 4) / (m2 * m2) - 3.0;
}

inline std::size_t floor_count(double fraction, std::size_t n) {
  std::size_t k = 0;
  while (static_cast<double>(k + 1) <= fraction * static_cast<double>(n) + 1e-9) ++k;
  return k;
}

// Sum over every input-to-output path of the product of its weights,
// enumerated recursively rather than by matrix multiplication.
inline double path_sum(const std::vector<Eigen::MatrixXd>& w, std::size_t layer, Eigen::Index node) {
  if (layer == w.size()) return 1.0;
  double s = 0.0;
  for (Eigen::Index next = 0; next < w[layer].cols(); ++next) {
    s += w[layer](node, next) * path_sum(w, layer + 1, next);
  }
  return s;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
