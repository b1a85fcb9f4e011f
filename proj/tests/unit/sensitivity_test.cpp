#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "meltvisc/error.hpp"
#include "meltvisc/sensitivity.hpp"
#include "oracles.hpp"

namespace meltvisc {
namespace {

MlpModel linear_model(const std::vector<std::size_t>& dims, Rng& rng) {
  return fixtures::random_model(dims, Activation::Identity, rng);
}

TEST(ConnectionWeights, SingleHiddenLayerHandSum) {
  MlpModel m;
  Eigen::MatrixXd w1(1, 2);
  w1 << 1.0, -1.0;
  Eigen::MatrixXd w2(2, 1);
  w2 << 2.0, 1.0;
  m.weights = {w1, w2};
  m.biases = {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)};
  m.activations = {Activation::ReLU};
  const SensitivityReport r = connection_weights(m);
  ASSERT_EQ(r.raw.size(), 1u);
  EXPECT_EQ(r.raw[0], 1.0);
  EXPECT_EQ(r.relative[0], 100.0);
}

TEST(ConnectionWeights, IdentityPropagation) {
  MlpModel m;
  Eigen::MatrixXd out(2, 1);
  out << 0.7, -2.5;
  m.weights = {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2), out};
  m.biases = {Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(1)};
  m.activations = {Activation::Tanh, Activation::Tanh};
  const SensitivityReport r = connection_weights(m);
  EXPECT_EQ(r.raw, (std::vector<double>{0.7, -2.5}));
  EXPECT_EQ(r.order, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(r.rank, (std::vector<std::size_t>{2, 1}));
}

TEST(ConnectionWeights, DegenerateModel) {
  MlpModel m = init_network(default_train_config());
  for (auto& w : m.weights) w.setZero();
  try {
    connection_weights(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateModel);
  }
}

TEST(ConnectionWeights, MatchesPathEnumeration) {
  Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    const MlpModel m = fixtures::random_model({5, 4, 3, 6, 1}, Activation::ReLU, rng);
    const SensitivityReport r = connection_weights(m);
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(r.raw[i], oracle::path_sum(m.weights, 0, static_cast<Eigen::Index>(i)), 1e-12);
      abs_sum += std::abs(r.relative[i]);
    }
    EXPECT_NEAR(abs_sum, 100.0, 1e-9);
    std::vector<std::size_t> ranks = r.rank;
    std::sort(ranks.begin(), ranks.end());
    EXPECT_EQ(ranks, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  }
}

TEST(ConnectionWeights, EqualsJacobianOfLinearNet) {
  Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    const MlpModel m = linear_model({6, 5, 4, 1}, rng);
    const SensitivityReport r = connection_weights(m);
    const Eigen::RowVectorXd x0 = fixtures::random_matrix(1, 6, rng);
    for (Eigen::Index i = 0; i < 6; ++i) {
      const auto f = [&](double v) {
        Eigen::RowVectorXd x = x0;
        x(i) = v;
        return forward(m, x);
      };
      EXPECT_NEAR(r.raw[static_cast<std::size_t>(i)], oracle::central_difference(f, x0(i), 1e-3), 1e-9);
    }
  }
}

TEST(ConnectionWeights, LayerRescalingInvariance) {
  Rng rng(43);
  MlpModel m = fixtures::random_model({4, 5, 5, 1}, Activation::ReLU, rng);
  const SensitivityReport before = connection_weights(m);
  m.weights[1] *= 3.5;
  m.weights[2] /= 3.5;
  const SensitivityReport after = connection_weights(m);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(after.relative[i], before.relative[i], 1e-9);
}

TEST(Sign, Interpretation) {
  EXPECT_EQ(interpret_sign(-3.2), Direction::InverselyProportional);
  EXPECT_EQ(interpret_sign(0.5), Direction::DirectlyProportional);
  EXPECT_EQ(interpret_sign(0.0), Direction::Neutral);
}

TEST(Report, NamesAndCsv) {
  const auto names = input_names(kFeatureCount);
  EXPECT_EQ(names.front(), "CaO");
  EXPECT_EQ(names.back(), "T");
  EXPECT_EQ(input_names(2), (std::vector<std::string>{"x0", "x1"}));

  Rng rng(44);
  const SensitivityReport r = connection_weights(fixtures::random_model({20, 6, 1}, Activation::ReLU, rng));
  const std::string csv = sensitivity_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "input,raw,relative_percent,rank,direction");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
  EXPECT_NE(csv.find("\nT,"), std::string::npos);
}

TEST(Slope, LinearNetThroughScaler) {
  Rng rng(45);
  MlpModel m = linear_model({kFeatureCount, 3, 1}, rng);
  const Dataset ds = fixtures::random_dataset(40, 46);
  m.scaler = fit_scaler(ds);
  const SensitivityReport r = connection_weights(m);
  const double slope = mean_input_slope(m, feature_matrix(ds), static_cast<Eigen::Index>(kTemperatureFeature), 1.0);
  EXPECT_NEAR(slope, r.raw[kTemperatureFeature] / m.scaler->stddev[kTemperatureFeature], 1e-9);
}

}  // namespace
}  // namespace meltvisc
