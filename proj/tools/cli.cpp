#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "meltvisc/baselines.hpp"
#include "meltvisc/csv_io.hpp"
#include "meltvisc/error.hpp"
#include "meltvisc/metrics.hpp"
#include "meltvisc/model_io.hpp"
#include "meltvisc/network.hpp"
#include "meltvisc/pipeline.hpp"
#include "meltvisc/sensitivity.hpp"

namespace meltvisc::cli {

namespace fs = std::filesystem;

namespace {

// Order in which `synth --active k` picks species.
constexpr std::array<Species, kSpeciesCount> kSynthActiveOrder = {
    Species::SiO2, Species::CaO,  Species::Al2O3, Species::MgO,  Species::Na2O,
    Species::FeO,  Species::MnO,  Species::K2O,   Species::TiO2, Species::B2O3,
    Species::CaF2, Species::Li2O, Species::Fe2O3, Species::ZrO2, Species::P2O5,
    Species::NiO,  Species::SO3,  Species::Cr2O3, Species::V2O5,
};

void guard_outputs(const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const auto& o = outputs[k];
    if (o.empty()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (!outputs[j].empty() && fs::weakly_canonical(outputs[j]) == fs::weakly_canonical(o)) {
        throw Error(ErrorCode::InvalidConfig, "two outputs share the path " + o.string());
      }
    }
    for (const auto& i : inputs) {
      if (!i.empty() && fs::weakly_canonical(i) == fs::weakly_canonical(o)) {
        throw Error(ErrorCode::InvalidConfig, "output " + o.string() + " would overwrite input " + i.string());
      }
    }
  }
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

Dataset read_processed(const fs::path& path, const CsvOptions& opts, std::ostream& err) {
  ParsedDataset p = read_dataset_csv(path, opts);
  print_warnings(err, p.warnings);
  if (p.dataset.stage != Stage::Processed) {
    throw Error(ErrorCode::StageMismatch, path.string() + " holds raw viscosities; run preprocess first");
  }
  return std::move(p.dataset);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("bad value '{}' for '{}'", text, key));
  }
  return v;
}

std::pair<std::string, fs::path> named_path(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw Error(ErrorCode::InvalidConfig, "expected NAME=PATH, got '" + spec + "'");
  }
  return {spec.substr(0, eq), fs::path(spec.substr(eq + 1))};
}

}  // namespace

std::vector<TrainConfig> parse_grid_config(const std::string& text, const TrainConfig& base) {
  static const std::vector<std::string> kKeys = {"depth",      "width",         "activation", "bias_init", "epochs",
                                                 "batch_size", "learning_rate", "patience",   "seed"};
  std::map<std::string, std::vector<std::string>> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, fmt::format("line {}: expected key = values", line_no));
    const std::string key = trim(t.substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("line {}: unknown key '{}'", line_no, key));
    }
    auto list = split_list(t.substr(eq + 1));
    if (list.empty()) throw Error(ErrorCode::InvalidConfig, fmt::format("line {}: '{}' has no values", line_no, key));
    values[key] = std::move(list);
  }

  std::vector<TrainConfig> space{base};
  for (const auto& key : kKeys) {
    const auto it = values.find(key);
    if (it == values.end()) continue;
    std::vector<TrainConfig> next;
    for (const auto& cfg : space) {
      for (const auto& v : it->second) {
        TrainConfig c = cfg;
        if (key == "depth") c.depth = parse_number<std::size_t>(key, v);
        else if (key == "width") c.width = parse_number<std::size_t>(key, v);
        else if (key == "activation") c.activation = parse_activation(v);
        else if (key == "bias_init") c.bias_init = parse_bias_init(v);
        else if (key == "epochs") c.max_epochs = parse_number<std::size_t>(key, v);
        else if (key == "batch_size") c.batch_size = parse_number<std::size_t>(key, v);
        else if (key == "learning_rate") c.adam.learning_rate = parse_number<double>(key, v);
        else if (key == "patience") c.patience = parse_number<std::size_t>(key, v);
        else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
        next.push_back(c);
      }
    }
    space = std::move(next);
  }
  for (const auto& c : space) c.validate();
  return space;
}

namespace {

struct TrainFlags {
  std::size_t depth = 3;
  std::size_t width = 22;
  std::string activation = "relu";
  std::string bias_init = "zeros";
  std::size_t epochs = 100000;
  std::size_t batch_size = 64;
  double learning_rate = 1e-3;
  std::size_t patience = 100;

  TrainConfig to_config(std::uint64_t seed) const {
    TrainConfig c;
    c.depth = depth;
    c.width = width;
    c.activation = parse_activation(activation);
    c.bias_init = parse_bias_init(bias_init);
    c.max_epochs = epochs;
    c.batch_size = batch_size;
    c.adam.learning_rate = learning_rate;
    c.patience = patience;
    c.seed = seed;
    c.validate();
    return c;
  }
};

void add_train_flags(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--depth", f.depth, "Hidden layers")->capture_default_str();
  cmd->add_option("--width", f.width, "Neurons per hidden layer")->capture_default_str();
  cmd->add_option("--activation", f.activation, "relu | sigmoid | tanh")->capture_default_str();
  cmd->add_option("--bias-init", f.bias_init, "zeros | ones")->capture_default_str();
  cmd->add_option("--epochs", f.epochs, "Maximum epochs")->capture_default_str();
  cmd->add_option("--batch-size", f.batch_size, "Mini-batch size")->capture_default_str();
  cmd->add_option("--lr", f.learning_rate, "Adam learning rate")->capture_default_str();
  cmd->add_option("--patience", f.patience, "Early-stopping patience (epochs)")->capture_default_str();
}

std::string model_summary(const MlpModel& m) {
  std::string s = "layer   in -> out   activation   parameters\n";
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    const bool output = l + 1 == m.weights.size();
    s += fmt::format("{:>5} {:>4} -> {:<4}  {:<11}  {:>10}\n", l, m.weights[l].rows(), m.weights[l].cols(),
                     output ? std::string("linear") : std::string(to_string(m.activations[l])),
                     m.weights[l].size() + m.biases[l].size());
  }
  s += fmt::format("total parameters: {}\n", m.parameter_count());
  return s;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Melt viscosity toolkit: preprocessing, neural-network training and evaluation", "meltvisc"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::uint64_t seed = 0;
  bool strict_ranges = false;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Base seed for every random stream")->capture_default_str();
    cmd->add_flag("--strict-ranges", strict_ranges, "Warn on values outside the reference database ranges");
  };

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic VFT dataset with known ground truth");
  fs::path synth_out, synth_truth;
  std::size_t synth_samples = 2000, synth_active = 6;
  double synth_noise = 0.0, synth_tmin = 1400.0, synth_tmax = 2000.0;
  synth->add_option("--out", synth_out, "Raw dataset CSV to write")->required();
  synth->add_option("--truth", synth_truth, "Ground-truth record to write")->required();
  synth->add_option("--samples", synth_samples, "Number of rows")->capture_default_str();
  synth->add_option("--active", synth_active, "Number of major species")->capture_default_str()->check(CLI::Range(1, 19));
  synth->add_option("--noise", synth_noise, "Std of additive log10 noise")->capture_default_str();
  synth->add_option("--t-min", synth_tmin, "Minimum temperature (K)")->capture_default_str();
  synth->add_option("--t-max", synth_tmax, "Maximum temperature (K)")->capture_default_str();
  add_common(synth);

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "Filter, transform, deduplicate, scale and split a raw dataset");
  fs::path pre_in, pre_dir;
  SplitSpec split_spec;
  pre->add_option("--in", pre_in, "Raw dataset CSV")->required()->check(CLI::ExistingFile);
  pre->add_option("--out-dir", pre_dir, "Directory for processed CSVs, scaler and report")->required();
  pre->add_option("--train-frac", split_spec.train)->capture_default_str();
  pre->add_option("--val-frac", split_spec.validation)->capture_default_str();
  pre->add_option("--test-frac", split_spec.test)->capture_default_str();
  add_common(pre);

  // train
  auto* tr = app.add_subcommand("train", "Train a network with Adam and early stopping");
  fs::path tr_train, tr_val, tr_scaler, tr_model, tr_history;
  TrainFlags tr_flags;
  tr->add_option("--train", tr_train, "Processed training CSV")->required()->check(CLI::ExistingFile);
  tr->add_option("--val", tr_val, "Processed validation CSV")->required()->check(CLI::ExistingFile);
  tr->add_option("--scaler", tr_scaler, "Scaler file from preprocess")->required()->check(CLI::ExistingFile);
  tr->add_option("--model", tr_model, "Model file to write")->required();
  tr->add_option("--history", tr_history, "History CSV to write");
  add_train_flags(tr, tr_flags);
  add_common(tr);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate a model on a processed test CSV");
  fs::path ev_model, ev_test, ev_out;
  ev->add_option("--model", ev_model)->required()->check(CLI::ExistingFile);
  ev->add_option("--test", ev_test)->required()->check(CLI::ExistingFile);
  ev->add_option("--out", ev_out, "Report file to write");
  add_common(ev);

  // predict
  auto* pr = app.add_subcommand("predict", "Predict log10 viscosity for composition/temperature rows");
  fs::path pr_model, pr_in, pr_out;
  pr->add_option("--model", pr_model)->required()->check(CLI::ExistingFile);
  pr->add_option("--in", pr_in, "CSV with the 19 species columns and temperature_k")->required()->check(CLI::ExistingFile);
  pr->add_option("--out", pr_out, "Prediction CSV (sample_id,log10_eta_pred); stdout when omitted");
  add_common(pr);

  // sensitivity
  auto* se = app.add_subcommand("sensitivity", "Connection-weights importance of each input");
  fs::path se_model, se_out;
  se->add_option("--model", se_model)->required()->check(CLI::ExistingFile);
  se->add_option("--out", se_out, "CSV to write; stdout when omitted");
  add_common(se);

  // grid
  auto* gr = app.add_subcommand("grid", "Train and rank every configuration of a hyperparameter grid");
  fs::path gr_config, gr_train, gr_val, gr_scaler, gr_out;
  std::size_t gr_jobs = 1;
  gr->add_option("--config", gr_config, "Grid file (key = v1, v2, ...)")->required()->check(CLI::ExistingFile);
  gr->add_option("--train", gr_train)->required()->check(CLI::ExistingFile);
  gr->add_option("--val", gr_val)->required()->check(CLI::ExistingFile);
  gr->add_option("--scaler", gr_scaler)->required()->check(CLI::ExistingFile);
  gr->add_option("--out", gr_out, "Ranked results CSV");
  gr->add_option("--jobs", gr_jobs, "Concurrent trials")->capture_default_str()->check(CLI::PositiveNumber);
  add_common(gr);

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare prediction sets on a processed test CSV");
  fs::path cmp_test, cmp_csv;
  std::vector<std::string> cmp_preds, cmp_models;
  cmp->add_option("--test", cmp_test)->required()->check(CLI::ExistingFile);
  cmp->add_option("--pred", cmp_preds, "NAME=PATH of a sample_id,log10_eta_pred CSV");
  cmp->add_option("--model", cmp_models, "NAME=PATH of a model file to predict with");
  cmp->add_option("--csv", cmp_csv, "Comparison CSV to write");
  add_common(cmp);

  if (args.size() > 1 && !args[1].empty() && args[1].front() != '-' && app.get_subcommand_no_throw(args[1]) == nullptr) {
    fmt::print(err, "error: unknown subcommand '{}'\n{}", args[1], app.help());
    return 2;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const CsvOptions csv_opts{strict_ranges};
  try {
    if (synth->parsed()) {
      guard_outputs({}, {synth_out, synth_truth});
      SynthSpec spec = default_synth_spec();
      spec.samples = synth_samples;
      spec.active.assign(kSynthActiveOrder.begin(), kSynthActiveOrder.begin() + static_cast<std::ptrdiff_t>(synth_active));
      spec.noise = synth_noise;
      spec.temperature_min = synth_tmin;
      spec.temperature_max = synth_tmax;
      spec.seed = seed;
      const SynthResult r = generate_synthetic(spec);
      write_dataset_csv(synth_out, r.raw);
      write_text_file(synth_truth, r.truth.to_text());
      fmt::print(out, "wrote {} samples to {}\n", r.raw.size(), synth_out.string());
    } else if (pre->parsed()) {
      fs::create_directories(pre_dir);
      const fs::path processed = pre_dir / "processed.csv", train_csv = pre_dir / "train.csv",
                     val_csv = pre_dir / "validation.csv", test_csv = pre_dir / "test.csv",
                     scaler_txt = pre_dir / "scaler.txt", report_txt = pre_dir / "report.txt";
      guard_outputs({pre_in}, {processed, train_csv, val_csv, test_csv, scaler_txt, report_txt});
      ParsedDataset raw = read_dataset_csv(pre_in, csv_opts);
      print_warnings(err, raw.warnings);
      if (raw.dataset.stage != Stage::Raw) throw Error(ErrorCode::StageMismatch, pre_in.string() + " is already processed");
      split_spec.seed = seed;
      const PreprocessResult r = preprocess(raw.dataset, PreprocessConfig{split_spec});
      write_dataset_csv(processed, r.processed);
      write_dataset_csv(train_csv, r.parts.train);
      write_dataset_csv(val_csv, r.parts.validation);
      write_dataset_csv(test_csv, r.parts.test);
      write_text_file(scaler_txt, scaler_to_text(r.scaler));
      write_text_file(report_txt, r.report.to_text());
      out << r.report.to_text();
    } else if (tr->parsed()) {
      guard_outputs({tr_train, tr_val, tr_scaler}, {tr_model, tr_history});
      const TrainConfig config = tr_flags.to_config(seed);
      const Scaler scaler = scaler_from_text(read_text_file(tr_scaler));
      const RegressionData train_set = make_regression_data(read_processed(tr_train, csv_opts, err), scaler);
      const RegressionData val_set = make_regression_data(read_processed(tr_val, csv_opts, err), scaler);
      TrainResult result = train(init_network(config), train_set, val_set, config);
      result.model.scaler = scaler;
      save_model(tr_model, result.model);
      if (!tr_history.empty()) write_text_file(tr_history, history_csv(result.history));
      const auto& h = result.history;
      out << model_summary(result.model);
      fmt::print(out, "epochs run: {}\nbest epoch: {}\nbest val_loss: {}\nbest val_mae: {}\n", h.stop_epoch,
                 h.best_epoch, h.val_loss[h.best_epoch - 1], h.val_mae[h.best_epoch - 1]);
    } else if (ev->parsed()) {
      guard_outputs({ev_model, ev_test}, {ev_out});
      const MlpModel model = load_model(ev_model);
      const Dataset test = read_processed(ev_test, csv_opts, err);
      const Eigen::VectorXd pred = predict(model, feature_matrix(test));
      const std::vector<double> p(pred.begin(), pred.end());
      const EvalReport report = evaluate(p, test.targets());
      const std::string text = to_text(report);
      if (!ev_out.empty()) write_text_file(ev_out, text);
      out << text;
    } else if (pr->parsed()) {
      guard_outputs({pr_model, pr_in}, {pr_out});
      const MlpModel model = load_model(pr_model);
      const Eigen::VectorXd pred = predict(model, read_feature_csv(pr_in));
      if (pr_out.empty()) {
        write_predictions_csv(out, pred);
      } else {
        std::ofstream f(pr_out);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + pr_out.string());
        write_predictions_csv(f, pred);
      }
    } else if (se->parsed()) {
      guard_outputs({se_model}, {se_out});
      const SensitivityReport report = connection_weights(load_model(se_model));
      const std::string csv = sensitivity_csv(report);
      if (se_out.empty()) {
        out << csv;
      } else {
        write_text_file(se_out, csv);
        const auto names = input_names(report.raw.size());
        for (std::size_t idx : report.order) {
          fmt::print(out, "{:>3}  {:<6} {:>9.3f} %  {}\n", report.rank[idx], names[idx], report.relative[idx],
                     to_string(interpret_sign(report.raw[idx])));
        }
      }
    } else if (gr->parsed()) {
      guard_outputs({gr_config, gr_train, gr_val, gr_scaler}, {gr_out});
      TrainConfig base;
      base.seed = seed;
      const auto space = parse_grid_config(read_text_file(gr_config), base);
      const Scaler scaler = scaler_from_text(read_text_file(gr_scaler));
      const RegressionData train_set = make_regression_data(read_processed(gr_train, csv_opts, err), scaler);
      const RegressionData val_set = make_regression_data(read_processed(gr_val, csv_opts, err), scaler);
      const auto results = grid_search(space, train_set, val_set, gr_jobs);
      std::string csv = "rank,trial,depth,width,activation,bias_init,epochs,batch_size,learning_rate,patience,seed,"
                        "val_loss,val_mae,stop_epoch,best_epoch\n";
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto& c = r.config;
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", i + 1, r.index, c.depth, c.width,
                           to_string(c.activation), to_string(c.bias_init), c.max_epochs, c.batch_size,
                           format_double(c.adam.learning_rate), c.patience, c.seed, format_double(r.val_loss),
                           format_double(r.val_mae), r.stop_epoch, r.best_epoch);
      }
      if (!gr_out.empty()) write_text_file(gr_out, csv);
      out << csv;
    } else if (cmp->parsed()) {
      std::vector<fs::path> inputs{cmp_test};
      std::vector<NamedPredictions> sets;
      const Dataset test = read_processed(cmp_test, csv_opts, err);
      for (const auto& spec : cmp_models) {
        const auto [name, path] = named_path(spec);
        inputs.push_back(path);
        const Eigen::VectorXd pred = predict(load_model(path), feature_matrix(test));
        sets.push_back({name, std::vector<double>(pred.begin(), pred.end())});
      }
      for (const auto& spec : cmp_preds) {
        const auto [name, path] = named_path(spec);
        inputs.push_back(path);
        sets.push_back({name, read_predictions_csv(path)});
      }
      if (sets.empty()) throw Error(ErrorCode::InvalidConfig, "compare needs at least one --pred or --model");
      guard_outputs(inputs, {cmp_csv});
      const auto rows = compare_models(sets, test.targets());
      if (!cmp_csv.empty()) write_text_file(cmp_csv, comparison_csv(rows));
      out << comparison_table(rows);
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace meltvisc::cli
