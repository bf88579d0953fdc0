#include "mofs/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "mofs/errors.hpp"
#include "mofs/rng.hpp"

namespace mofs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// strtod-compatible full-token parse; accepts "inf", "nan", "Infinity".
bool parse_double(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  std::string tmp(cell);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size();
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string_view cell =
        line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    cells.emplace_back(trim(cell));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

constexpr std::uint64_t kSplitSlot = 0x5350;
constexpr std::uint64_t kSubsampleSlot = 0x5355;

}  // namespace

std::uint8_t LabelRule::classify(std::string_view raw) const {
  std::string_view label = trim(raw);
  for (const auto& n : normal_labels)
    if (label == n) return 0;
  for (const auto& a : attack_labels)
    if (label == a) return 1;
  if (other_is_attack && !label.empty()) return 1;
  throw LabelError(std::string(label));
}

void DatasetSpec::validate() const {
  if (feature_count == 0) throw ConfigError("dataset '" + name + "': feature_count must be positive");
  if (label_column >= column_count)
    throw ConfigError("dataset '" + name + "': label column out of range");
  for (std::size_t c : ignored_columns) {
    if (c >= column_count) throw ConfigError("dataset '" + name + "': ignored column out of range");
    if (c == label_column)
      throw ConfigError("dataset '" + name + "': label column cannot be ignored");
  }
  for (std::size_t c : categorical_columns) {
    if (c >= column_count || c == label_column ||
        std::find(ignored_columns.begin(), ignored_columns.end(), c) != ignored_columns.end())
      throw ConfigError("dataset '" + name + "': categorical column must be a feature column");
  }
  if (feature_columns().size() != feature_count)
    throw ConfigError(fmt::format(
        "dataset '{}': {} columns minus label and {} ignored leaves {} features, declared {}",
        name, column_count, ignored_columns.size(), feature_columns().size(), feature_count));
  if (label_rule.normal_labels.empty())
    throw ConfigError("dataset '" + name + "': label rule needs at least one normal label");
}

std::vector<std::size_t> DatasetSpec::feature_columns() const {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < column_count; ++c) {
    if (c == label_column) continue;
    if (std::find(ignored_columns.begin(), ignored_columns.end(), c) != ignored_columns.end())
      continue;
    cols.push_back(c);
  }
  return cols;
}

bool DatasetSpec::is_categorical(std::size_t raw_column) const {
  return std::find(categorical_columns.begin(), categorical_columns.end(), raw_column) !=
         categorical_columns.end();
}

DatasetSpec nsl_kdd_spec() {
  DatasetSpec spec;
  spec.name = "nsl-kdd";
  spec.feature_count = 41;
  spec.column_count = 43;  // 41 features, label, difficulty level
  spec.label_column = 41;
  spec.ignored_columns = {42};
  spec.categorical_columns = {1, 2, 3};  // protocol_type, service, flag
  spec.has_header = false;
  spec.label_rule.normal_labels = {"normal"};
  spec.label_rule.attack_labels = {
      // DoS
      "back", "land", "neptune", "pod", "smurf", "teardrop", "apache2", "udpstorm",
      "processtable", "mailbomb", "worm",
      // Probe
      "satan", "ipsweep", "nmap", "portsweep", "mscan", "saint",
      // R2L
      "guess_passwd", "ftp_write", "imap", "phf", "multihop", "warezmaster", "warezclient",
      "spy", "xlock", "xsnoop", "snmpguess", "snmpgetattack", "httptunnel", "sendmail",
      "named",
      // U2R
      "buffer_overflow", "loadmodule", "rootkit", "perl", "sqlattack", "xterm", "ps"};
  return spec;
}

DatasetSpec unsw_nb15_spec() {
  DatasetSpec spec;
  spec.name = "unsw-nb15";
  spec.feature_count = 42;
  spec.column_count = 45;  // id, 42 features, attack_cat, label
  spec.label_column = 44;
  spec.ignored_columns = {0, 43};
  spec.categorical_columns = {2, 3, 4};  // proto, service, state
  spec.has_header = true;
  spec.label_rule.normal_labels = {"0"};
  spec.label_rule.attack_labels = {"1"};
  return spec;
}

DatasetSpec builtin_spec(std::string_view name) {
  std::string n = lower(name);
  if (n == "nsl-kdd" || n == "nslkdd" || n == "nsl_kdd") return nsl_kdd_spec();
  if (n == "unsw-nb15" || n == "unswnb15" || n == "unsw_nb15") return unsw_nb15_spec();
  throw ConfigError("unknown built-in dataset '" + std::string(name) + "'");
}

RawTable parse_csv(std::string_view text, const DatasetSpec& spec) {
  RawTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_pending = spec.has_header;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (header_pending) {
      header_pending = false;
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != spec.column_count)
      throw ParseError(fmt::format("expected {} columns, found {}", spec.column_count, cells.size()),
                       line_no);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

RawTable load_csv(const std::filesystem::path& path, const DatasetSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  try {
    return parse_csv(buf.str(), spec);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

bool is_defective_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty() || cell == "?") return true;
  std::string l = lower(cell);
  if (l == "na" || l == "n/a" || l == "null" || l == "none") return true;
  double v;
  if (parse_double(cell, v) && !std::isfinite(v)) return true;
  return false;
}

CleanResult clean(const RawTable& raw, const DatasetSpec& spec) {
  CleanResult out;
  out.table.header = raw.header;
  for (const auto& row : raw.rows) {
    bool defective = false;
    for (std::size_t c = 0; c < row.size() && !defective; ++c) {
      if (std::find(spec.ignored_columns.begin(), spec.ignored_columns.end(), c) !=
          spec.ignored_columns.end())
        continue;
      defective = is_defective_cell(row[c]);
    }
    if (defective)
      ++out.removed;
    else
      out.table.rows.push_back(row);
  }
  return out;
}

const EncodingMap::Column* EncodingMap::find(std::size_t raw_column) const {
  for (const auto& col : columns)
    if (col.raw_column == raw_column) return &col;
  return nullptr;
}

double EncodingMap::encode(std::size_t raw_column, std::string_view cell) const {
  const Column* col = find(raw_column);
  if (col == nullptr) throw ArgumentError(fmt::format("column {} is not categorical", raw_column));
  cell = trim(cell);
  auto it = col->codes.find(std::string(cell));
  if (it != col->codes.end()) return it->second;
  const auto unseen = static_cast<double>(col->categories.size());
  // Already-encoded integer codes pass through unchanged.
  long long code = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), code);
  if (ec == std::errc() && ptr == cell.data() + cell.size() && code >= 0 &&
      static_cast<double>(code) <= unseen)
    return static_cast<double>(code);
  return unseen;
}

EncodingMap fit_ordinal_encoder(const RawTable& raw, const DatasetSpec& spec) {
  EncodingMap map;
  for (std::size_t c : spec.categorical_columns) {
    EncodingMap::Column col;
    col.raw_column = c;
    for (const auto& row : raw.rows) {
      const std::string& v = row.at(c);
      if (col.codes.emplace(v, static_cast<double>(col.categories.size())).second)
        col.categories.push_back(v);
    }
    map.columns.push_back(std::move(col));
  }
  return map;
}

NumericTable apply_encoder(const RawTable& raw, const DatasetSpec& spec, const EncodingMap& map) {
  const auto features = spec.feature_columns();
  NumericTable out;
  out.rows = raw.rows.size();
  out.cols = features.size();
  out.values.reserve(out.rows * out.cols);
  out.labels.reserve(out.rows);
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    for (std::size_t c : features) {
      if (map.find(c) != nullptr) {
        out.values.push_back(map.encode(c, row.at(c)));
        continue;
      }
      double v;
      if (!parse_double(row.at(c), v))
        throw ParseError(fmt::format("non-numeric value '{}' in column {} of row {}", row.at(c), c, r));
      out.values.push_back(v);
    }
    out.labels.push_back(spec.label_rule.classify(row.at(spec.label_column)));
  }
  return out;
}

FeatureTable::FeatureTable(std::size_t rows, std::size_t cols, std::vector<double> values,
                           std::vector<std::uint8_t> labels)
    : rows_(rows), cols_(cols), values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.size() != rows_ * cols_)
    throw ArgumentError("FeatureTable: value count does not match rows * cols");
  if (labels_.size() != rows_) throw ArgumentError("FeatureTable: label count does not match rows");
  for (double v : values_)
    if (!std::isfinite(v)) throw ArgumentError("FeatureTable: non-finite value");
  for (auto l : labels_)
    if (l > 1) throw ArgumentError("FeatureTable: labels must be 0 or 1");
}

FeatureTable FeatureTable::select_rows(std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * cols_);
  std::vector<std::uint8_t> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= rows_) throw ArgumentError("select_rows: row index out of range");
    auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return FeatureTable(rows.size(), cols_, std::move(values), std::move(labels));
}

FeatureTable FeatureTable::select_columns(std::span<const std::size_t> cols) const {
  for (std::size_t c : cols)
    if (c >= cols_) throw ArgumentError("select_columns: column index out of range");
  std::vector<double> values;
  values.reserve(rows_ * cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c : cols) values.push_back(at(r, c));
  return FeatureTable(rows_, cols.size(), std::move(values), labels_);
}

FeatureTable FeatureTable::concat(const FeatureTable& other) const {
  if (other.cols_ != cols_) throw ArgumentError("concat: column count mismatch");
  std::vector<double> values = values_;
  values.insert(values.end(), other.values_.begin(), other.values_.end());
  std::vector<std::uint8_t> labels = labels_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return FeatureTable(rows_ + other.rows_, cols_, std::move(values), std::move(labels));
}

std::size_t FeatureTable::count_label(std::uint8_t label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

NormalizationParams fit_minmax(const NumericTable& table) {
  NormalizationParams p;
  p.min.assign(table.cols, 0.0);
  p.max.assign(table.cols, 0.0);
  if (table.rows == 0) return p;
  for (std::size_t c = 0; c < table.cols; ++c) {
    double lo = table.at(0, c), hi = lo;
    for (std::size_t r = 1; r < table.rows; ++r) {
      lo = std::min(lo, table.at(r, c));
      hi = std::max(hi, table.at(r, c));
    }
    p.min[c] = lo;
    p.max[c] = hi;
  }
  return p;
}

FeatureTable apply_minmax(const NumericTable& table, const NormalizationParams& params) {
  if (params.min.size() != table.cols || params.max.size() != table.cols)
    throw ArgumentError("apply_minmax: parameter width does not match table");
  std::vector<double> values(table.values.size());
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      const double lo = params.min[c], hi = params.max[c];
      double v = 0.0;
      if (hi > lo) v = std::clamp((table.at(r, c) - lo) / (hi - lo), 0.0, 1.0);
      values[r * table.cols + c] = v;
    }
  }
  return FeatureTable(table.rows, table.cols, std::move(values), table.labels);
}

std::vector<std::uint8_t> binarize_labels(std::span<const std::string> raw_labels,
                                          const DatasetSpec& spec) {
  std::vector<std::uint8_t> out;
  out.reserve(raw_labels.size());
  for (const auto& l : raw_labels) out.push_back(spec.label_rule.classify(l));
  return out;
}

SplitIndices split_validation(std::size_t row_count, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ArgumentError(fmt::format("validation fraction must be in (0, 1), got {}", fraction));
  const auto n_val =
      static_cast<std::size_t>(std::floor(static_cast<double>(row_count) * fraction + 1e-9));
  std::vector<std::size_t> idx(row_count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RngStream rng(seed, 0, kSplitSlot);
  for (std::size_t i = 0; i < n_val; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(row_count - i));
    std::swap(idx[i], idx[j]);
  }
  SplitIndices split;
  split.seed = seed;
  split.validation_rows.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_val));
  split.train_rows.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_val), idx.end());
  std::sort(split.validation_rows.begin(), split.validation_rows.end());
  std::sort(split.train_rows.begin(), split.train_rows.end());
  return split;
}

namespace {

std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool,
                                                    std::size_t k, RngStream& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

std::vector<std::size_t> subsample_indices(std::span<const std::uint8_t> labels,
                                           std::size_t max_rows, std::uint64_t seed,
                                           bool stratified) {
  if (max_rows < 2) throw ArgumentError("subsample: max_rows must be at least 2");
  const std::size_t n = labels.size();
  std::vector<std::size_t> picked;
  if (max_rows >= n) {
    picked.resize(n);
    std::iota(picked.begin(), picked.end(), std::size_t{0});
    return picked;
  }
  RngStream rng(seed, 0, kSubsampleSlot);
  if (!stratified) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    picked = sample_without_replacement(std::move(all), max_rows, rng);
  } else {
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) by_class[labels[i] ? 1 : 0].push_back(i);
    if (by_class[0].empty() || by_class[1].empty())
      throw ArgumentError("stratified subsample requires both classes to be present");
    // Rounded quota keeps each class within one row of its exact share.
    const double exact0 = static_cast<double>(max_rows) *
                          static_cast<double>(by_class[0].size()) / static_cast<double>(n);
    auto q0 = static_cast<std::size_t>(std::llround(exact0));
    q0 = std::min(q0, by_class[0].size());
    const std::size_t q1 = std::min(max_rows - q0, by_class[1].size());
    picked = sample_without_replacement(by_class[0], q0, rng);
    auto p1 = sample_without_replacement(by_class[1], q1, rng);
    picked.insert(picked.end(), p1.begin(), p1.end());
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

FeatureTable subsample(const FeatureTable& table, std::size_t max_rows, std::uint64_t seed,
                       bool stratified) {
  auto idx = subsample_indices(table.labels(), max_rows, seed, stratified);
  return table.select_rows(idx);
}

namespace {

RawTable take_rows(const RawTable& raw, std::span<const std::size_t> rows) {
  RawTable out;
  out.header = raw.header;
  out.rows.reserve(rows.size());
  for (std::size_t r : rows) out.rows.push_back(raw.rows[r]);
  return out;
}

std::vector<std::uint8_t> labels_of(const RawTable& raw, const DatasetSpec& spec) {
  std::vector<std::uint8_t> out;
  out.reserve(raw.rows.size());
  for (const auto& row : raw.rows) out.push_back(spec.label_rule.classify(row.at(spec.label_column)));
  return out;
}

}  // namespace

PreparedData prepare(const DatasetSpec& spec, const RawTable& train_raw, const RawTable& test_raw,
                     const PrepareOptions& options) {
  spec.validate();
  PreparedData out;
  out.spec = spec;

  auto train_clean = clean(train_raw, spec);
  auto test_clean = clean(test_raw, spec);
  out.removed_train = train_clean.removed;
  out.removed_test = test_clean.removed;

  RawTable train_all = std::move(train_clean.table);
  RawTable test_all = std::move(test_clean.table);
  if (options.max_train_rows > 0) {
    auto idx = subsample_indices(labels_of(train_all, spec), options.max_train_rows,
                                 derive_seed(options.seed, 1), options.stratified);
    train_all = take_rows(train_all, idx);
  }
  if (options.max_test_rows > 0) {
    auto idx = subsample_indices(labels_of(test_all, spec), options.max_test_rows,
                                 derive_seed(options.seed, 2), options.stratified);
    test_all = take_rows(test_all, idx);
  }

  out.split = split_validation(train_all.row_count(), options.validation_fraction,
                               derive_seed(options.seed, 3));
  RawTable train_part = take_rows(train_all, out.split.train_rows);
  RawTable val_part = take_rows(train_all, out.split.validation_rows);

  out.encoding = fit_ordinal_encoder(train_part, spec);
  NumericTable train_num = apply_encoder(train_part, spec, out.encoding);
  out.normalization = fit_minmax(train_num);
  out.train = apply_minmax(train_num, out.normalization);
  out.validation = apply_minmax(apply_encoder(val_part, spec, out.encoding), out.normalization);
  out.test = apply_minmax(apply_encoder(test_all, spec, out.encoding), out.normalization);
  return out;
}

PreparedData prepare_files(const DatasetSpec& spec, const std::filesystem::path& train_path,
                           const std::filesystem::path& test_path, const PrepareOptions& options) {
  spec.validate();
  return prepare(spec, load_csv(train_path, spec), load_csv(test_path, spec), options);
}

namespace {

void write_table_csv(const FeatureTable& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (std::size_t c = 0; c < t.col_count(); ++c) out << 'f' << c << ',';
  out << "label\n";
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    for (double v : t.row(r)) out << fmt::format("{}", v) << ',';
    out << static_cast<int>(t.labels()[r]) << '\n';
  }
}

}  // namespace

void write_prepared_cache(const PreparedData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_table_csv(data.train, dir / "train.csv");
  write_table_csv(data.validation, dir / "validation.csv");
  write_table_csv(data.test, dir / "test.csv");

  nlohmann::ordered_json j;
  j["dataset"] = data.spec.name;
  j["feature_columns"] = data.spec.feature_columns();
  j["removed_rows"] = {{"train", data.removed_train}, {"test", data.removed_test}};
  j["split_seed"] = data.split.seed;
  auto& enc = j["encoding"];
  enc = nlohmann::ordered_json::array();
  for (const auto& col : data.encoding.columns)
    enc.push_back({{"column", col.raw_column},
                   {"categories", col.categories},
                   {"unseen_code", col.categories.size()}});
  j["normalization"] = {{"min", data.normalization.min}, {"max", data.normalization.max}};
  std::ofstream out(dir / "preprocess.json");
  if (!out) throw IoError("cannot write '" + (dir / "preprocess.json").string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace mofs
