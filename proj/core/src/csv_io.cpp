#include "meltvisc/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace meltvisc {

SchemaError::SchemaError(std::size_t row, std::string column, std::string reason)
    : Error(ErrorCode::SchemaError, fmt::format("row {}, column '{}': {}", row, column, reason)),
      row_(row),
      column_(std::move(column)),
      reason_(std::move(reason)) {}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> dataset_header(Stage stage) {
  std::vector<std::string> h(kSpeciesNames.begin(), kSpeciesNames.end());
  h.emplace_back(kTemperatureColumn);
  h.emplace_back(stage == Stage::Raw ? kViscosityColumn : kLog10ViscosityColumn);
  return h;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool blank(const std::string& line) { return trim(line).empty(); }

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  if (cell.empty()) throw SchemaError(row, column, "missing value");
  double v = 0.0;
  const char* first = cell.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) throw SchemaError(row, column, "not a number: '" + cell + "'");
  if (!std::isfinite(v)) throw SchemaError(row, column, "non-finite");
  return v;
}

std::string header_text(const std::vector<std::string>& h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + h[i];
  return s;
}

void check_prefix(const std::vector<std::string>& header, std::size_t count) {
  const auto expected = dataset_header(Stage::Raw);
  for (std::size_t i = 0; i < count; ++i) {
    if (i >= header.size()) throw SchemaError(1, expected[i], "column missing from header");
    if (header[i] != expected[i]) {
      throw SchemaError(1, header[i], fmt::format("expected column '{}' at position {}", expected[i], i + 1));
    }
  }
}

}  // namespace

ParsedDataset parse_dataset_csv(std::istream& in, const CsvOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(1, "", "empty file");
  const auto header = split_cells(line);
  check_prefix(header, kFeatureCount);
  if (header.size() != kFeatureCount + 1) {
    throw SchemaError(1, header.size() > kFeatureCount + 1 ? header[kFeatureCount + 1] : std::string(kViscosityColumn),
                      fmt::format("expected {} columns, got {}", kFeatureCount + 1, header.size()));
  }
  ParsedDataset out;
  const std::string& target = header.back();
  if (target == kViscosityColumn) {
    out.dataset.stage = Stage::Raw;
  } else if (target == kLog10ViscosityColumn) {
    out.dataset.stage = Stage::Processed;
  } else {
    throw SchemaError(1, target, fmt::format("expected '{}' or '{}'", kViscosityColumn, kLog10ViscosityColumn));
  }

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    const auto cells = split_cells(line);
    if (cells.size() != header.size()) {
      throw SchemaError(row, cells.size() < header.size() ? header[cells.size()] : "",
                        fmt::format("expected {} cells, got {}", header.size(), cells.size()));
    }
    std::array<double, kSpeciesCount> mass{};
    for (std::size_t i = 0; i < kSpeciesCount; ++i) {
      mass[i] = parse_cell(cells[i], row, header[i]);
      if (mass[i] < 0.0) throw SchemaError(row, header[i], "negative");
      if (options.strict_ranges && mass[i] > kReferenceMaxMassPercent[i]) {
        out.warnings.push_back(fmt::format("row {}: {} = {} exceeds reference maximum {:.2f} %mass", row, header[i],
                                           mass[i], kReferenceMaxMassPercent[i]));
      }
    }
    const double t = parse_cell(cells[kTemperatureFeature], row, header[kTemperatureFeature]);
    if (!(t > 0.0)) throw SchemaError(row, header[kTemperatureFeature], "non-positive temperature");
    if (options.strict_ranges && (t < kReferenceMinTemperatureK || t > kReferenceMaxTemperatureK)) {
      out.warnings.push_back(fmt::format("row {}: temperature_k = {} outside reference range [{:.2f}, {:.2f}] K", row, t,
                                         kReferenceMinTemperatureK, kReferenceMaxTemperatureK));
    }
    const double y = parse_cell(cells.back(), row, header.back());
    if (out.dataset.stage == Stage::Raw && !(y > 0.0)) throw SchemaError(row, header.back(), "non-positive viscosity");

    Composition comp;
    try {
      comp = Composition(mass, options.composition_tolerance);
    } catch (const Error& e) {
      throw SchemaError(row, "composition", e.what());
    }
    out.dataset.samples.push_back({comp, t, y});
  }
  return out;
}

ParsedDataset read_dataset_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  ParsedDataset p = parse_dataset_csv(in, options);
  p.dataset.provenance = path.filename().string();
  return p;
}

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  out << header_text(dataset_header(ds.stage)) << '\n';
  for (const Sample& s : ds.samples) {
    for (double a : s.composition.amounts()) out << format_double(a) << ',';
    out << format_double(s.temperature_k) << ',' << format_double(s.target) << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_dataset_csv(out, ds);
}

Eigen::MatrixXd parse_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(1, "", "empty file");
  const auto header = split_cells(line);
  check_prefix(header, kFeatureCount);
  if (header.size() > kFeatureCount + 1) {
    throw SchemaError(1, header.back(), fmt::format("expected {} or {} columns", kFeatureCount, kFeatureCount + 1));
  }
  std::vector<std::array<double, kFeatureCount>> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    const auto cells = split_cells(line);
    if (cells.size() != header.size()) {
      throw SchemaError(row, cells.size() < header.size() ? header[cells.size()] : "",
                        fmt::format("expected {} cells, got {}", header.size(), cells.size()));
    }
    std::array<double, kFeatureCount> f{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      f[i] = parse_cell(cells[i], row, header[i]);
      if (f[i] < 0.0) throw SchemaError(row, header[i], "negative");
    }
    if (!(f[kTemperatureFeature] > 0.0)) throw SchemaError(row, header[kTemperatureFeature], "non-positive temperature");
    rows.push_back(f);
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kFeatureCount));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kFeatureCount; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return x;
}

Eigen::MatrixXd read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_feature_csv(in);
}

void write_predictions_csv(std::ostream& out, const Eigen::VectorXd& predictions) {
  out << "sample_id,log10_eta_pred\n";
  for (Eigen::Index i = 0; i < predictions.size(); ++i) out << i << ',' << format_double(predictions(i)) << '\n';
}

std::vector<double> parse_predictions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(1, "", "empty file");
  const auto header = split_cells(line);
  if (header.size() != 2 || header[0] != "sample_id" || header[1] != "log10_eta_pred") {
    throw SchemaError(1, header.empty() ? "" : header[0], "expected header 'sample_id,log10_eta_pred'");
  }
  std::vector<double> preds;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    const auto cells = split_cells(line);
    if (cells.size() != 2) throw SchemaError(row, "", "expected 2 cells");
    const double id = parse_cell(cells[0], row, "sample_id");
    if (id != static_cast<double>(preds.size())) {
      throw Error(ErrorCode::MisalignedPredictions,
                  fmt::format("row {}: sample_id {} where {} was expected", row, cells[0], preds.size()));
    }
    preds.push_back(parse_cell(cells[1], row, "log10_eta_pred"));
  }
  return preds;
}

std::vector<double> read_predictions_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_predictions_csv(in);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

}  // namespace meltvisc
