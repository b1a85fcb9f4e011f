#include "meltvisc/network.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <tuple>

#include "meltvisc/error.hpp"
#include "meltvisc/random.hpp"

namespace meltvisc {

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Identity: return "identity";
  }
  return "?";
}

std::string_view to_string(BiasInit b) noexcept { return b == BiasInit::Zeros ? "zeros" : "ones"; }

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

Activation parse_activation(std::string_view name) {
  const std::string n = lower(name);
  if (n == "relu") return Activation::ReLU;
  if (n == "sigmoid") return Activation::Sigmoid;
  if (n == "tanh") return Activation::Tanh;
  if (n == "identity" || n == "linear") return Activation::Identity;
  throw Error(ErrorCode::InvalidConfig, "unknown activation '" + std::string(name) + "'");
}

BiasInit parse_bias_init(std::string_view name) {
  const std::string n = lower(name);
  if (n == "zeros") return BiasInit::Zeros;
  if (n == "ones") return BiasInit::Ones;
  throw Error(ErrorCode::InvalidConfig, "unknown bias init '" + std::string(name) + "'");
}

std::size_t min_width_bound(std::size_t d_x, std::size_t d_y) {
  if (d_x == 0 || d_y == 0) throw Error(ErrorCode::InvalidCardinality, "cardinalities must be >= 1");
  return d_x + d_y + 1;
}

void TrainConfig::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (input_dim < 1) fail("input_dim must be >= 1");
  if (width < 1) fail("width must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (max_epochs < 1) fail("max_epochs must be >= 1");
  if (patience < 1) fail("patience must be >= 1");
  if (!(adam.learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) fail("beta1 must be in [0, 1)");
  if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) fail("beta2 must be in [0, 1)");
  if (!(adam.epsilon > 0.0)) fail("epsilon must be > 0");
}

TrainConfig default_train_config() { return TrainConfig{}; }

std::vector<std::size_t> MlpModel::layer_dims() const {
  std::vector<std::size_t> dims;
  if (weights.empty()) return dims;
  dims.push_back(static_cast<std::size_t>(weights.front().rows()));
  for (const auto& w : weights) dims.push_back(static_cast<std::size_t>(w.cols()));
  return dims;
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  }
  return n;
}

void MlpModel::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ShapeMismatch, what); };
  if (weights.empty()) fail("model has no layers");
  if (biases.size() != weights.size()) fail("one bias vector per layer required");
  if (activations.size() + 1 != weights.size()) fail("one activation per hidden layer required");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() < 1 || weights[l].cols() < 1) fail("empty weight matrix at layer " + std::to_string(l));
    if (biases[l].size() != weights[l].cols()) fail("bias width mismatch at layer " + std::to_string(l));
    if (l > 0 && weights[l].rows() != weights[l - 1].cols()) {
      fail("fan-in of layer " + std::to_string(l) + " does not match previous width");
    }
    if (!weights[l].allFinite() || !biases[l].allFinite()) {
      throw Error(ErrorCode::InvalidValue, "non-finite parameter at layer " + std::to_string(l));
    }
  }
  if (weights.back().cols() != 1) fail("output layer must have width 1");
  if (scaler && input_dim() != kFeatureCount) fail("scaled models take " + std::to_string(kFeatureCount) + " inputs");
}

MlpModel init_network(const TrainConfig& config) {
  config.validate();
  MlpModel m;
  m.bias_init = config.bias_init;
  Rng rng(derive_seed(config.seed, "init"));
  std::vector<std::size_t> dims{config.input_dim};
  for (std::size_t i = 0; i < config.depth; ++i) dims.push_back(config.width);
  dims.push_back(1);
  const double bias_value = config.bias_init == BiasInit::Ones ? 1.0 : 0.0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(dims[l]);
    const auto fan_out = static_cast<Eigen::Index>(dims[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_in, fan_out);
    for (Eigen::Index r = 0; r < fan_in; ++r) {
      for (Eigen::Index c = 0; c < fan_out; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    m.weights.push_back(std::move(w));
    m.biases.push_back(Eigen::VectorXd::Constant(fan_out, bias_value));
  }
  m.activations.assign(config.depth, config.activation);
  return m;
}

namespace {

void activate(Activation a, Eigen::MatrixXd& z) {
  switch (a) {
    case Activation::ReLU: z = z.cwiseMax(0.0); break;
    case Activation::Sigmoid: z = (1.0 + (-z.array()).exp()).inverse().matrix(); break;
    case Activation::Tanh: z = z.array().tanh().matrix(); break;
    case Activation::Identity: break;
  }
}

// Derivative expressed through the pre-activation z and activation a = f(z).
Eigen::MatrixXd activation_derivative(Activation act, const Eigen::MatrixXd& z, const Eigen::MatrixXd& a) {
  switch (act) {
    case Activation::ReLU: return (z.array() > 0.0).cast<double>().matrix();
    case Activation::Sigmoid: return (a.array() * (1.0 - a.array())).matrix();
    case Activation::Tanh: return (1.0 - a.array().square()).matrix();
    case Activation::Identity: return Eigen::MatrixXd::Ones(z.rows(), z.cols());
  }
  return Eigen::MatrixXd::Zero(z.rows(), z.cols());
}

void check_input(const MlpModel& model, const Eigen::MatrixXd& x) {
  if (model.weights.empty()) throw Error(ErrorCode::ShapeMismatch, "model has no layers");
  if (x.cols() != model.weights.front().rows()) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(model.weights.front().rows()) +
                                              " features, got " + std::to_string(x.cols()));
  }
}

Eigen::MatrixXd affine(const Eigen::MatrixXd& in, const Eigen::MatrixXd& w, const Eigen::VectorXd& b) {
  Eigen::MatrixXd z = in * w;
  z.rowwise() += b.transpose();
  return z;
}

}  // namespace

Eigen::MatrixXd last_hidden(const MlpModel& model, const Eigen::MatrixXd& x) {
  check_input(model, x);
  Eigen::MatrixXd a = x;
  for (std::size_t l = 0; l + 1 < model.weights.size(); ++l) {
    a = affine(a, model.weights[l], model.biases[l]);
    activate(model.activations[l], a);
  }
  return a;
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd h = last_hidden(model, x);
  return affine(h, model.weights.back(), model.biases.back()).col(0);
}

double forward(const MlpModel& model, const Eigen::RowVectorXd& x) {
  return forward(model, Eigen::MatrixXd(x))(0);
}

Eigen::VectorXd predict(const MlpModel& model, const Eigen::MatrixXd& raw_features) {
  if (!model.scaler) return forward(model, raw_features);
  return forward(model, apply_scaler(*model.scaler, raw_features));
}

ParameterSet ParameterSet::zeros_like(const MlpModel& model) {
  ParameterSet p;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    p.weights.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
    p.biases.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
  }
  return p;
}

LossAndGradients loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  check_input(model, x);
  if (y.size() != x.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(x.rows()) + " input rows but " + std::to_string(y.size()) + " targets");
  }
  if (x.rows() == 0) throw Error(ErrorCode::EmptySet, "empty batch");
  const std::size_t layers = model.weights.size();

  // pre[l] / post[l] are the pre- and post-activation of hidden layer l.
  std::vector<Eigen::MatrixXd> pre(layers - 1), post(layers - 1);
  const Eigen::MatrixXd* in = &x;
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    pre[l] = affine(*in, model.weights[l], model.biases[l]);
    post[l] = pre[l];
    activate(model.activations[l], post[l]);
    in = &post[l];
  }
  const Eigen::VectorXd pred = affine(*in, model.weights.back(), model.biases.back()).col(0);

  const double n = static_cast<double>(x.rows());
  const Eigen::VectorXd residual = pred - y;
  LossAndGradients out;
  out.loss = residual.squaredNorm() / n;
  out.gradients = ParameterSet::zeros_like(model);

  Eigen::MatrixXd delta = (2.0 / n) * residual;  // dL/d(output pre-activation), rows = samples
  for (std::size_t l = layers; l-- > 0;) {
    const Eigen::MatrixXd& input = l == 0 ? x : post[l - 1];
    out.gradients.weights[l].noalias() = input.transpose() * delta;
    out.gradients.biases[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Eigen::MatrixXd back = delta * model.weights[l].transpose();
      delta = back.cwiseProduct(activation_derivative(model.activations[l - 1], pre[l - 1], post[l - 1]));
    }
  }
  return out;
}

AdamState AdamState::for_model(const MlpModel& model) {
  return AdamState{ParameterSet::zeros_like(model), ParameterSet::zeros_like(model), 0};
}

namespace {

template <typename Param>
void adam_update(Param& p, Param& m, Param& v, const Param& g, const AdamSettings& s, double c1, double c2) {
  m = s.beta1 * m + (1.0 - s.beta1) * g;
  v = s.beta2 * v + (1.0 - s.beta2) * g.cwiseProduct(g);
  p.array() -= s.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + s.epsilon);
}

}  // namespace

void adam_step(AdamState& state, MlpModel& model, const ParameterSet& gradients, const AdamSettings& settings) {
  if (state.first_moment.weights.size() != model.weights.size() ||
      gradients.weights.size() != model.weights.size()) {
    throw Error(ErrorCode::ShapeMismatch, "Adam state does not match the model");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(settings.beta1, t);
  const double c2 = 1.0 - std::pow(settings.beta2, t);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    adam_update(model.weights[l], state.first_moment.weights[l], state.second_moment.weights[l],
                gradients.weights[l], settings, c1, c2);
    adam_update(model.biases[l], state.first_moment.biases[l], state.second_moment.biases[l],
                gradients.biases[l], settings, c1, c2);
  }
}

RegressionData make_regression_data(const Dataset& ds, const Scaler& scaler) {
  if (ds.stage != Stage::Processed) throw Error(ErrorCode::StageMismatch, "training data must be processed");
  return {apply_scaler(scaler, ds), target_vector(ds)};
}

namespace {

struct EpochMetrics {
  double mse;
  double mae;
};

EpochMetrics evaluate_set(const MlpModel& model, const RegressionData& data) {
  const Eigen::VectorXd r = forward(model, data.x) - data.y;
  const double n = static_cast<double>(data.size());
  return {r.squaredNorm() / n, r.cwiseAbs().sum() / n};
}

}  // namespace

TrainResult train(const MlpModel& initial, const RegressionData& train_set, const RegressionData& val_set,
                  const TrainConfig& config) {
  config.validate();
  initial.validate();
  if (train_set.size() == 0) throw Error(ErrorCode::EmptySet, "training set is empty");
  if (val_set.size() == 0) throw Error(ErrorCode::EmptySet, "validation set is empty");
  if (train_set.x.rows() != train_set.y.size() || val_set.x.rows() != val_set.y.size()) {
    throw Error(ErrorCode::ShapeMismatch, "feature rows and targets differ in length");
  }

  MlpModel model = initial;
  AdamState adam = AdamState::for_model(model);
  Rng rng(derive_seed(config.seed, "shuffle"));
  const auto n = static_cast<std::size_t>(train_set.size());
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  TrainResult result{model, {}};
  TrainHistory& h = result.history;
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  Eigen::MatrixXd bx;
  Eigen::VectorXd by;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span<Eigen::Index>(order));
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, n - start);
      bx.resize(static_cast<Eigen::Index>(len), train_set.x.cols());
      by.resize(static_cast<Eigen::Index>(len));
      for (std::size_t i = 0; i < len; ++i) {
        const auto row = order[start + i];
        bx.row(static_cast<Eigen::Index>(i)) = train_set.x.row(row);
        by(static_cast<Eigen::Index>(i)) = train_set.y(row);
      }
      const LossAndGradients lg = loss_and_gradients(model, bx, by);
      adam_step(adam, model, lg.gradients, config.adam);
    }

    const EpochMetrics tr = evaluate_set(model, train_set);
    const EpochMetrics va = evaluate_set(model, val_set);
    h.loss.push_back(tr.mse);
    h.mae.push_back(tr.mae);
    h.val_loss.push_back(va.mse);
    h.val_mae.push_back(va.mae);
    h.stop_epoch = epoch;

    if (va.mse < best_val) {
      best_val = va.mse;
      h.best_epoch = epoch;
      result.model = model;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  if (h.best_epoch == 0) h.best_epoch = h.stop_epoch;  // every epoch produced NaN; keep the last
  return result;
}

std::vector<GridResult> grid_search(const std::vector<TrainConfig>& space, const RegressionData& train_set,
                                    const RegressionData& val_set, std::size_t jobs) {
  if (space.empty()) throw Error(ErrorCode::InvalidConfig, "grid search space is empty");
  for (const auto& c : space) c.validate();

  std::vector<GridResult> results(space.size());
  std::vector<std::exception_ptr> failures(space.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < space.size(); i = next++) try {
      const TrainResult tr = train(init_network(space[i]), train_set, val_set, space[i]);
      const auto best = tr.history.best_epoch - 1;
      results[i] = GridResult{i,
                              space[i],
                              tr.history.val_loss[best],
                              tr.history.val_mae[best],
                              tr.history.stop_epoch,
                              tr.history.best_epoch};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, space.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::sort(results.begin(), results.end(), [](const GridResult& a, const GridResult& b) {
    const auto key = [](const GridResult& r) {
      // NaN losses rank last.
      const double l = std::isnan(r.val_loss) ? std::numeric_limits<double>::infinity() : r.val_loss;
      const double m = std::isnan(r.val_mae) ? std::numeric_limits<double>::infinity() : r.val_mae;
      return std::tuple(l, m, r.index);
    };
    return key(a) < key(b);
  });
  return results;
}

}  // namespace meltvisc
