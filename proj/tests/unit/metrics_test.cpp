#include <gtest/gtest.h>

#include "meltvisc/error.hpp"
#include "meltvisc/metrics.hpp"
#include "meltvisc/random.hpp"
#include "oracles.hpp"

namespace meltvisc {
namespace {

using V = std::vector<double>;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(Mse, Examples) {
  EXPECT_EQ(mse(V{1, 2}, V{1, 2}), 0.0);
  EXPECT_EQ(mse(V{0, 0}, V{1, -1}), 1.0);
  EXPECT_EQ(code_of([] { mse(V{}, V{}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { mse(V{1}, V{1, 2}); }), ErrorCode::LengthMismatch);
}

TEST(Mae, Examples) {
  EXPECT_EQ(mae(V{1, 2}, V{1, 2}), 0.0);
  EXPECT_EQ(mae(V{1, 2, 3}, V{2, 2, 2}), 2.0 / 3.0);
}

TEST(ErrorStd, Examples) {
  EXPECT_EQ(error_std(V{1, 2}, V{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(error_std(V{0, 0}, V{0, 2}), std::sqrt(2.0));
  EXPECT_EQ(code_of([] { error_std(V{1}, V{2}); }), ErrorCode::TooFew);
}

TEST(R2, Examples) {
  EXPECT_EQ(r2(V{1, 2, 3}, V{1, 2, 3}), 1.0);
  EXPECT_EQ(r2(V{1, 2, 3}, V{2, 2, 2}), 0.0);
  EXPECT_EQ(r2(V{1, 2, 3}, V{1, 2, 4}), 0.5);
  EXPECT_EQ(code_of([] { r2(V{1, 1, 1}, V{1, 2, 3}); }), ErrorCode::ConstantTarget);
}

TEST(ShapeStats, Examples) {
  EXPECT_EQ(shape_stats(V{-1, 0, 1}).skewness, 0.0);
  const ShapeStats s = shape_stats(V{-5, 0, 0, 0, 5});
  EXPECT_EQ(s.skewness, 0.0);
  EXPECT_EQ(s.max_negative, -5.0);
  EXPECT_EQ(s.max_positive, 5.0);
  const ShapeStats t = shape_stats(V{0, 0, 0, 1});
  EXPECT_NEAR(t.skewness, oracle::skewness(V{0, 0, 0, 1}), 1e-12);
  ASSERT_TRUE(t.kurtosis.has_value());
  EXPECT_NEAR(*t.kurtosis, oracle::excess_kurtosis(V{0, 0, 0, 1}), 1e-12);
  EXPECT_FALSE(shape_stats(V{0, 1, 3}).kurtosis.has_value());
  EXPECT_EQ(code_of([] { shape_stats(V{0, 1}); }), ErrorCode::TooFew);
  EXPECT_EQ(code_of([] { shape_stats(V{2, 2, 2}); }), ErrorCode::ZeroVariance);
}

TEST(Evaluate, PerfectModel) {
  const EvalReport r = evaluate(V{1, 2, 3}, V{1, 2, 3});
  EXPECT_EQ(r.mae, 0.0);
  EXPECT_EQ(r.std, 0.0);
  EXPECT_EQ(r.r2, 1.0);
  EXPECT_FALSE(r.skewness.has_value());
}

TEST(Evaluate, MatchesOracleFuzzed) {
  Rng rng(51);
  for (std::size_t n : {4u, 5u, 10u, 77u, 1000u, 10000u}) {
    for (int k = 0; k < 5; ++k) {
      V t(n), p(n);
      for (std::size_t i = 0; i < n; ++i) {
        t[i] = rng.uniform(-3.0, 8.0);
        p[i] = t[i] + rng.normal() * 0.3;
      }
      const EvalReport r = evaluate(p, t);
      EXPECT_EQ(r.n, n);
      EXPECT_LT(rel(r.mse, oracle::mse(t, p)), 1e-12);
      EXPECT_LT(rel(r.mae, oracle::mae(t, p)), 1e-12);
      EXPECT_LT(rel(r.std, oracle::error_std(t, p)), 1e-12);
      EXPECT_LT(rel(r.r2, oracle::r2(t, p)), 1e-12);
      V e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = p[i] - t[i];
      EXPECT_LT(rel(*r.skewness, oracle::skewness(e)), 1e-12);
      EXPECT_LT(rel(*r.kurtosis, oracle::excess_kurtosis(e)), 1e-12);
      EXPECT_EQ(r.max_negative_error, *std::min_element(e.begin(), e.end()));
      EXPECT_EQ(r.max_positive_error, *std::max_element(e.begin(), e.end()));
      EXPECT_EQ(r.mae, mae(t, p));
      EXPECT_EQ(r.r2, r2(t, p));
    }
  }
}

TEST(Properties, InvariancesAndInequalities) {
  Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.below(50);
    V t(n), p(n), ts(n), ps(n);
    const double shift = rng.uniform(-10.0, 10.0);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = rng.uniform(-3.0, 8.0);
      p[i] = rng.uniform(-3.0, 8.0);
      ts[i] = t[i] + shift;
      ps[i] = p[i] + shift;
    }
    EXPECT_LE(mae(t, p), std::sqrt(mse(t, p)) + 1e-15);
    EXPECT_NEAR(r2(ts, ps), r2(t, p), 1e-9);
    EXPECT_EQ(mae(t, p), mae(p, t));
    EXPECT_EQ(error_std(t, p), error_std(p, t));
    const auto e = residuals(t, p);
    if (n >= 3 && *std::max_element(e.begin(), e.end()) > *std::min_element(e.begin(), e.end())) {
      const ShapeStats s = shape_stats(e);
      for (double x : e) {
        EXPECT_LE(s.max_negative, x);
        EXPECT_GE(s.max_positive, x);
      }
    }
  }
  EXPECT_NE(r2(V{1, 2, 3}, V{1, 2, 4}), r2(V{1, 2, 4}, V{1, 2, 3}));
}

TEST(Compare, RankingAndErrors) {
  const V truth{1, 2, 3, 4, 5};
  const V mean_pred(5, 3.0);
  const V off{1.5, 2.5, 3.5, 4.5, 5.5};
  const auto rows = compare_models({{"mean", mean_pred}, {"perfect", truth}, {"offset", off}}, truth);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].name, "perfect");
  EXPECT_EQ(rows[1].name, "offset");
  EXPECT_EQ(rows[2].name, "mean");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(rows[i].rank, i + 1);
  EXPECT_EQ(rows[1].report.mae, oracle::mae(truth, off));

  const auto twins = compare_models({{"a", off}, {"b", off}}, truth);
  EXPECT_EQ(twins[0].report.mae, twins[1].report.mae);
  EXPECT_EQ(twins[0].report.r2, twins[1].report.r2);

  EXPECT_EQ(code_of([&] { compare_models({{"short", V{1, 2}}}, truth); }), ErrorCode::MisalignedPredictions);
  const std::string csv = comparison_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "rank,model,n,mae,std,r2,skewness,kurtosis,max_negative_error,max_positive_error");
  EXPECT_NE(comparison_table(rows).find("perfect"), std::string::npos);
}

}  // namespace
}  // namespace meltvisc
