#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "meltvisc/dataset.hpp"
#include "meltvisc/error.hpp"

namespace meltvisc {

inline constexpr std::string_view kTemperatureColumn = "temperature_k";
inline constexpr std::string_view kViscosityColumn = "viscosity_pa_s";
inline constexpr std::string_view kLog10ViscosityColumn = "log10_viscosity";

/// Located CSV failure. row is the 1-based line number in the file.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t row, std::string column, std::string reason);

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t row_;
  std::string column_;
  std::string reason_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Header for a dataset of the given stage: 19 species, temperature_k,
/// then viscosity_pa_s (raw) or log10_viscosity (processed).
std::vector<std::string> dataset_header(Stage stage);

struct CsvOptions {
  /// Emit warnings for values outside the reference database ranges.
  bool strict_ranges = false;
  double composition_tolerance = Composition::kDefaultTolerance;
};

struct ParsedDataset {
  Dataset dataset;
  std::vector<std::string> warnings;
};

/// The stage is taken from the last header column. Throws SchemaError for
/// a wrong header, missing or non-numeric cells, negative amounts,
/// non-finite values, temperatures <= 0 and raw viscosities <= 0.
ParsedDataset parse_dataset_csv(std::istream& in, const CsvOptions& options = {});
ParsedDataset read_dataset_csv(const std::filesystem::path& path, const CsvOptions& options = {});

void write_dataset_csv(std::ostream& out, const Dataset& ds);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds);

/// Unscaled predictor rows for prediction. The header must start with the
/// 19 species and temperature_k; one trailing target column is tolerated.
Eigen::MatrixXd parse_feature_csv(std::istream& in);
Eigen::MatrixXd read_feature_csv(const std::filesystem::path& path);

/// sample_id,log10_eta_pred with sample_id = 0-based row position.
void write_predictions_csv(std::ostream& out, const Eigen::VectorXd& predictions);
/// Throws SchemaError for malformed rows and Error{MisalignedPredictions}
/// when sample ids do not follow row order.
std::vector<double> parse_predictions_csv(std::istream& in);
std::vector<double> read_predictions_csv(const std::filesystem::path& path);

/// Whole-file helpers; throw Error{IoError}.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace meltvisc
