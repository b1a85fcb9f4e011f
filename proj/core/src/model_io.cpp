#include "meltvisc/model_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "meltvisc/csv_io.hpp"
#include "meltvisc/error.hpp"

namespace meltvisc {

namespace {

constexpr std::string_view kMagic = "meltvisc-model";

std::string join(const auto& values) {
  std::string s;
  bool first = true;
  for (const auto& v : values) {
    if (!first) s += ' ';
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      s += format_double(v);
    } else {
      s += fmt::format("{}", v);
    }
  }
  return s;
}

// Token reader over whitespace-separated text; any shortfall is corruption.
class Tokens {
 public:
  explicit Tokens(const std::string& text) : in_(text) {}

  std::string word(std::string_view what) {
    std::string w;
    if (!(in_ >> w)) throw Error(ErrorCode::CorruptFile, fmt::format("truncated before {}", what));
    return w;
  }

  void expect(std::string_view keyword) {
    const std::string w = word(keyword);
    if (w != keyword) throw Error(ErrorCode::CorruptFile, fmt::format("expected '{}', found '{}'", keyword, w));
  }

  double number(std::string_view what) {
    const std::string w = word(what);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw Error(ErrorCode::CorruptFile, fmt::format("bad number '{}' in {}", w, what));
    }
    return v;
  }

  std::size_t count(std::string_view what) {
    const std::string w = word(what);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw Error(ErrorCode::CorruptFile, fmt::format("bad count '{}' in {}", w, what));
    }
    return v;
  }

 private:
  std::istringstream in_;
};

void write_scaler_lines(std::string& s, const Scaler& sc) {
  s += "scaler_mean: " + join(sc.mean) + '\n';
  s += "scaler_std: " + join(sc.stddev) + '\n';
}

Scaler read_scaler(Tokens& t) {
  Scaler sc;
  t.expect("scaler_mean:");
  for (double& m : sc.mean) m = t.number("scaler_mean");
  t.expect("scaler_std:");
  for (double& s : sc.stddev) {
    s = t.number("scaler_std");
    if (!(s > 0.0)) throw Error(ErrorCode::CorruptFile, "scaler standard deviation must be > 0");
  }
  return sc;
}

}  // namespace

std::string model_to_text(const MlpModel& model) {
  model.validate();
  std::string s;
  s += fmt::format("{} {}\n", kMagic, kModelFormatVersion);
  s += "species: " + join(kSpeciesNames) + '\n';
  s += "layers: " + join(model.layer_dims()) + '\n';
  std::vector<std::string_view> acts;
  for (auto a : model.activations) acts.push_back(to_string(a));
  s += fmt::format("activations: {} {}\n", acts.size(), join(acts));
  s += fmt::format("bias_init: {}\n", to_string(model.bias_init));
  if (model.scaler) {
    s += "scaler: yes\n";
    write_scaler_lines(s, *model.scaler);
  } else {
    s += "scaler: no\n";
  }
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const auto& w = model.weights[l];
    s += fmt::format("weights {}: {} {}\n", l, w.rows(), w.cols());
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      std::vector<double> row(w.row(r).begin(), w.row(r).end());
      s += join(row) + '\n';
    }
    s += fmt::format("bias {}: {}\n", l, model.biases[l].size());
    std::vector<double> b(model.biases[l].begin(), model.biases[l].end());
    s += join(b) + '\n';
  }
  s += "end\n";
  return s;
}

MlpModel model_from_text(const std::string& text) {
  Tokens t(text);
  t.expect(kMagic);
  const std::string version = t.word("version");
  if (version != std::to_string(kModelFormatVersion)) {
    throw Error(ErrorCode::VersionMismatch,
                fmt::format("model format version '{}' is not supported (expected {})", version, kModelFormatVersion));
  }
  t.expect("species:");
  for (auto name : kSpeciesNames) {
    const std::string w = t.word("species list");
    if (w != name) throw Error(ErrorCode::CorruptFile, fmt::format("species order differs at '{}'", w));
  }

  t.expect("layers:");
  // Layer widths are read until the activations keyword.
  std::vector<std::size_t> dims;
  for (std::string w = t.word("layers"); w != "activations:"; w = t.word("layers")) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size() || v == 0) {
      throw Error(ErrorCode::CorruptFile, "bad layer width '" + w + "'");
    }
    dims.push_back(v);
  }
  if (dims.size() < 2) throw Error(ErrorCode::CorruptFile, "need at least input and output widths");

  MlpModel m;
  const std::size_t n_act = t.count("activation count");
  if (n_act + 2 != dims.size()) throw Error(ErrorCode::CorruptFile, "activation count does not match layers");
  for (std::size_t i = 0; i < n_act; ++i) {
    try {
      m.activations.push_back(parse_activation(t.word("activations")));
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptFile, e.what());
    }
  }
  t.expect("bias_init:");
  try {
    m.bias_init = parse_bias_init(t.word("bias_init"));
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptFile, e.what());
  }
  t.expect("scaler:");
  const std::string has_scaler = t.word("scaler flag");
  if (has_scaler == "yes") {
    m.scaler = read_scaler(t);
  } else if (has_scaler != "no") {
    throw Error(ErrorCode::CorruptFile, "scaler flag must be yes or no");
  }

  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    t.expect("weights");
    t.expect(fmt::format("{}:", l));
    const std::size_t rows = t.count("weight rows");
    const std::size_t cols = t.count("weight cols");
    if (rows != dims[l] || cols != dims[l + 1]) {
      throw Error(ErrorCode::CorruptFile, fmt::format("layer {} shape {}x{} disagrees with layer widths", l, rows, cols));
    }
    Eigen::MatrixXd w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = t.number("weights");
    }
    t.expect("bias");
    t.expect(fmt::format("{}:", l));
    if (t.count("bias width") != cols) throw Error(ErrorCode::CorruptFile, fmt::format("bias {} width mismatch", l));
    Eigen::VectorXd b(static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < b.size(); ++c) b(c) = t.number("bias");
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  t.expect("end");
  try {
    m.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptFile, e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const MlpModel& model) {
  write_text_file(path, model_to_text(model));
}

MlpModel load_model(const std::filesystem::path& path) { return model_from_text(read_text_file(path)); }

std::string scaler_to_text(const Scaler& scaler) {
  std::string s = "species: " + join(kSpeciesNames) + " temperature_k\n";
  write_scaler_lines(s, scaler);
  return s;
}

Scaler scaler_from_text(const std::string& text) {
  Tokens t(text);
  t.expect("species:");
  for (auto name : kSpeciesNames) t.expect(name);
  t.expect(kTemperatureColumn);
  return read_scaler(t);
}

std::string history_csv(const TrainHistory& h) {
  std::string s = "epoch,loss,mae,val_loss,val_mae\n";
  for (std::size_t e = 0; e < h.loss.size(); ++e) {
    s += fmt::format("{},{},{},{},{}\n", e + 1, format_double(h.loss[e]), format_double(h.mae[e]),
                     format_double(h.val_loss[e]), format_double(h.val_mae[e]));
  }
  return s;
}

}  // namespace meltvisc
