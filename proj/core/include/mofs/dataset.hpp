#pragma once

// Loading and preprocessing of network-connection records: CSV ingestion,
// defect removal, ordinal encoding of categorical columns, min-max scaling
// and the train/validation split.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mofs {

/// Maps raw label text to {normal = 0, attack = 1}.
struct LabelRule {
  std::vector<std::string> normal_labels;
  std::vector<std::string> attack_labels;
  /// When set, any label not listed as normal counts as an attack.
  bool other_is_attack = false;

  /// Throws LabelError for text that is neither normal nor attack.
  std::uint8_t classify(std::string_view raw) const;
};

/// Column layout of one dataset family.
///
/// Feature columns are all raw columns except the label column and the
/// ignored columns, in file order.
struct DatasetSpec {
  std::string name;
  std::size_t feature_count = 0;
  std::size_t column_count = 0;
  std::size_t label_column = 0;
  std::vector<std::size_t> categorical_columns;
  std::vector<std::size_t> ignored_columns;
  bool has_header = false;
  LabelRule label_rule;

  /// Throws ConfigError when the declared counts are inconsistent.
  void validate() const;

  /// Raw column indices of the features, in order.
  std::vector<std::size_t> feature_columns() const;
  bool is_categorical(std::size_t raw_column) const;
};

/// NSL-KDD KDDTrain+/KDDTest+ layout: 41 features, label, difficulty.
DatasetSpec nsl_kdd_spec();
/// UNSW-NB15 training-set/testing-set layout: id, 42 features, attack_cat, label.
DatasetSpec unsw_nb15_spec();
/// Looks up a built-in spec by name ("nsl-kdd" or "unsw-nb15").
DatasetSpec builtin_spec(std::string_view name);

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t row_count() const { return rows.size(); }
};

/// Reads comma-separated text. Blank lines are skipped. Throws IoError when
/// the file cannot be read and ParseError (with the line number) when a row
/// does not have spec.column_count cells.
RawTable load_csv(const std::filesystem::path& path, const DatasetSpec& spec);

/// Same as load_csv but over in-memory text.
RawTable parse_csv(std::string_view text, const DatasetSpec& spec);

struct CleanResult {
  RawTable table;
  std::size_t removed = 0;
};

/// True for empty/"?"/"NA"-style cells and for numbers that are NaN or infinite.
bool is_defective_cell(std::string_view cell);

/// Drops every row with a missing or non-finite cell in a non-ignored column.
CleanResult clean(const RawTable& raw, const DatasetSpec& spec);

/// Ordinal codes for the categorical columns, fitted on training rows.
struct EncodingMap {
  struct Column {
    std::size_t raw_column = 0;
    std::vector<std::string> categories;  // index == code
    std::unordered_map<std::string, double> codes;
  };
  std::vector<Column> columns;

  /// Code for a cell in the given categorical column. Unseen categories map
  /// to the fitted category count; cells that already hold a valid integer
  /// code are passed through.
  double encode(std::size_t raw_column, std::string_view cell) const;
  const Column* find(std::size_t raw_column) const;
};

/// Numeric (encoded, not yet normalized) feature matrix plus labels.
struct NumericTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  std::vector<std::uint8_t> labels;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// Codes categories in order of first appearance in `raw`.
EncodingMap fit_ordinal_encoder(const RawTable& raw, const DatasetSpec& spec);

/// Converts feature cells to numbers and labels via the spec's rule.
/// Throws ParseError on a non-numeric cell in a numeric column.
NumericTable apply_encoder(const RawTable& raw, const DatasetSpec& spec,
                           const EncodingMap& map);

struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;
};

/// Dense feature matrix with values in [0, 1] and binary labels.
class FeatureTable {
 public:
  FeatureTable() = default;
  FeatureTable(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::vector<std::uint8_t> labels);

  std::size_t row_count() const { return rows_; }
  std::size_t col_count() const { return cols_; }

  double at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  FeatureTable select_rows(std::span<const std::size_t> rows) const;
  FeatureTable select_columns(std::span<const std::size_t> cols) const;
  /// Row-wise concatenation; column counts must match.
  FeatureTable concat(const FeatureTable& other) const;

  std::size_t count_label(std::uint8_t label) const;

  bool operator==(const FeatureTable&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> labels_;
};

NormalizationParams fit_minmax(const NumericTable& table);

/// Maps each column's fitted [min, max] onto [0, 1], clipping values outside
/// the fitted range. Constant columns become zero.
FeatureTable apply_minmax(const NumericTable& table, const NormalizationParams& params);

/// Label 0 = normal, 1 = attack.
std::vector<std::uint8_t> binarize_labels(std::span<const std::string> raw_labels,
                                          const DatasetSpec& spec);

struct SplitIndices {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> validation_rows;
  std::uint64_t seed = 0;
};

/// Uniform random split without replacement; |validation| = floor(rows * fraction).
SplitIndices split_validation(std::size_t row_count, double fraction, std::uint64_t seed);

/// Sorted row indices of a subsample of at most max_rows rows. With
/// `stratified`, each class keeps its proportion within one row.
std::vector<std::size_t> subsample_indices(std::span<const std::uint8_t> labels,
                                           std::size_t max_rows, std::uint64_t seed,
                                           bool stratified);

FeatureTable subsample(const FeatureTable& table, std::size_t max_rows,
                       std::uint64_t seed, bool stratified);

struct PrepareOptions {
  double validation_fraction = 0.2;
  std::uint64_t seed = 0;
  /// 0 means no limit.
  std::size_t max_train_rows = 0;
  std::size_t max_test_rows = 0;
  bool stratified = true;
};

/// Output of the full preprocessing pipeline.
struct PreparedData {
  DatasetSpec spec;
  FeatureTable train;
  FeatureTable validation;
  FeatureTable test;
  EncodingMap encoding;
  NormalizationParams normalization;
  SplitIndices split;
  std::size_t removed_train = 0;
  std::size_t removed_test = 0;

  /// Train and validation rows together (the original training set after
  /// subsampling), used to fit final classifiers.
  FeatureTable full_train() const { return train.concat(validation); }
};

/// clean -> (subsample) -> binarize -> split -> fit encoder/min-max on the
/// training rows -> apply to validation and test.
PreparedData prepare(const DatasetSpec& spec, const RawTable& train_raw,
                     const RawTable& test_raw, const PrepareOptions& options);

PreparedData prepare_files(const DatasetSpec& spec, const std::filesystem::path& train_path,
                           const std::filesystem::path& test_path,
                           const PrepareOptions& options);

/// Writes train/validation/test CSVs (features then label, full precision)
/// and a preprocess.json sidecar with the encoding map and min-max params.
void write_prepared_cache(const PreparedData& data, const std::filesystem::path& dir);

}  // namespace mofs
