#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "mofs/dataset.hpp"
#include "mofs/errors.hpp"
#include "mofs/rng.hpp"

using namespace mofs;

namespace {

DatasetSpec toy_spec() {
  DatasetSpec s;
  s.name = "toy";
  s.feature_count = 3;
  s.column_count = 4;
  s.label_column = 3;
  s.categorical_columns = {1};
  s.label_rule.normal_labels = {"normal"};
  s.label_rule.attack_labels = {"attack"};
  return s;
}

std::string nsl_row(const std::string& proto, const std::string& label) {
  std::string row = "0," + proto + ",http,SF";
  for (int i = 4; i < 41; ++i) row += "," + std::to_string(i % 7);
  return row + "," + label + ",21";
}

}  // namespace

TEST(DatasetSpec, BuiltinFeatureCounts) {
  EXPECT_EQ(nsl_kdd_spec().feature_count, 41U);
  EXPECT_EQ(unsw_nb15_spec().feature_count, 42U);
  EXPECT_EQ(nsl_kdd_spec().feature_columns().size(), 41U);
  EXPECT_EQ(unsw_nb15_spec().feature_columns().size(), 42U);
  EXPECT_THROW(builtin_spec("kdd99"), ConfigError);
}

TEST(DatasetSpec, InconsistentCountsRejected) {
  DatasetSpec s = toy_spec();
  s.feature_count = 4;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(LabelRule, NslKddLabels) {
  const auto rule = nsl_kdd_spec().label_rule;
  EXPECT_EQ(rule.classify("normal"), 0);
  EXPECT_EQ(rule.classify("neptune"), 1);
  EXPECT_EQ(rule.classify("smurf"), 1);
  try {
    rule.classify("???");
    FAIL() << "expected LabelError";
  } catch (const LabelError& e) {
    EXPECT_EQ(e.label(), "???");
  }
}

TEST(LoadCsv, NslKddRowsParse) {
  const std::string text = nsl_row("tcp", "normal") + "\n" + nsl_row("udp", "neptune") + "\n";
  const RawTable t = parse_csv(text, nsl_kdd_spec());
  ASSERT_EQ(t.row_count(), 2U);
  EXPECT_EQ(t.rows[1][1], "udp");
}

TEST(LoadCsv, EmptyTextHasNoRows) {
  EXPECT_EQ(parse_csv("", toy_spec()).row_count(), 0U);
}

TEST(LoadCsv, WrongWidthReportsLine) {
  try {
    parse_csv("1,tcp,2,normal\n1,tcp,normal\n", toy_spec());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
}

TEST(LoadCsv, MissingFileIsIoError) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv", toy_spec()), IoError);
}

TEST(Clean, DropsDefectiveRows) {
  const RawTable raw = parse_csv("1,tcp,2,normal\nNaN,tcp,2,normal\n1,udp,Infinity,attack\n3,icmp,?,normal\n",
                                 toy_spec());
  const CleanResult c = clean(raw, toy_spec());
  EXPECT_EQ(c.removed, 3U);
  ASSERT_EQ(c.table.row_count(), 1U);
  EXPECT_EQ(c.table.rows[0], raw.rows[0]);
}

TEST(Clean, NoDefectsIsIdentity) {
  const RawTable raw = parse_csv("1,tcp,2,normal\n2,udp,3,attack\n", toy_spec());
  const CleanResult c = clean(raw, toy_spec());
  EXPECT_EQ(c.removed, 0U);
  EXPECT_EQ(c.table.rows, raw.rows);
}

TEST(Encoder, FirstAppearanceOrder) {
  const RawTable raw = parse_csv("0,tcp,0,normal\n0,udp,0,normal\n0,tcp,0,normal\n0,icmp,0,attack\n", toy_spec());
  const EncodingMap map = fit_ordinal_encoder(raw, toy_spec());
  const NumericTable num = apply_encoder(raw, toy_spec(), map);
  std::vector<double> codes;
  for (std::size_t r = 0; r < num.rows; ++r) codes.push_back(num.at(r, 1));
  EXPECT_EQ(codes, (std::vector<double>{0, 1, 0, 2}));
  EXPECT_EQ(map.encode(1, "sctp"), 3.0);
}

TEST(Encoder, IdempotentOnEncodedData) {
  const RawTable raw = parse_csv("0,tcp,0,normal\n0,udp,0,normal\n0,icmp,0,attack\n", toy_spec());
  const EncodingMap map = fit_ordinal_encoder(raw, toy_spec());
  for (double code : {0.0, 1.0, 2.0})
    EXPECT_EQ(map.encode(1, std::to_string(static_cast<int>(code))), code);
}

TEST(Encoder, NumericColumnsUntouched) {
  const RawTable raw = parse_csv("1.5,tcp,7,normal\n", toy_spec());
  const NumericTable num = apply_encoder(raw, toy_spec(), fit_ordinal_encoder(raw, toy_spec()));
  EXPECT_EQ(num.at(0, 0), 1.5);
  EXPECT_EQ(num.at(0, 2), 7.0);
}

TEST(MinMax, Examples) {
  NumericTable t;
  t.rows = 3;
  t.cols = 2;
  t.values = {2, 5, 4, 5, 6, 5};
  t.labels = {0, 1, 0};
  const NormalizationParams p = fit_minmax(t);
  const FeatureTable f = apply_minmax(t, p);
  EXPECT_EQ(f.at(0, 0), 0.0);
  EXPECT_EQ(f.at(1, 0), 0.5);
  EXPECT_EQ(f.at(2, 0), 1.0);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(f.at(r, 1), 0.0);

  NumericTable test = t;
  test.rows = 1;
  test.values = {8, 5};
  test.labels = {1};
  EXPECT_EQ(apply_minmax(test, p).at(0, 0), 1.0);
}

TEST(MinMax, RandomTablesLandInUnitInterval) {
  RngStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    NumericTable t;
    t.rows = 1 + rng.below(30);
    t.cols = 1 + rng.below(5);
    for (std::size_t i = 0; i < t.rows * t.cols; ++i) t.values.push_back((rng.uniform01() - 0.5) * 1e6);
    t.labels.assign(t.rows, 0);
    const FeatureTable f = apply_minmax(t, fit_minmax(t));
    for (double v : f.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    NumericTable other = t;
    for (auto& v : other.values) v = (rng.uniform01() - 0.5) * 1e7;
    const FeatureTable g = apply_minmax(other, fit_minmax(t));
    for (double v : g.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(FeatureTable, RejectsNonFiniteAndBadLabels) {
  EXPECT_THROW(FeatureTable(1, 1, {std::numeric_limits<double>::quiet_NaN()}, {0}), ArgumentError);
  EXPECT_THROW(FeatureTable(1, 1, {0.5}, {2}), ArgumentError);
  EXPECT_THROW(FeatureTable(2, 1, {0.5, 0.5}, {1}), ArgumentError);
}

TEST(SplitValidation, PaperSize) {
  const SplitIndices s = split_validation(125972, 0.2, 1);
  EXPECT_EQ(s.validation_rows.size(), 25194U);
  EXPECT_EQ(s.train_rows.size(), 125972U - 25194U);
}

TEST(SplitValidation, DisjointCoverAndDeterministic) {
  for (std::size_t n : {2U, 10U, 37U, 500U}) {
    const SplitIndices a = split_validation(n, 0.2, 42);
    const SplitIndices b = split_validation(n, 0.2, 42);
    EXPECT_EQ(a.validation_rows, b.validation_rows);
    std::vector<std::size_t> all = a.train_rows;
    all.insert(all.end(), a.validation_rows.begin(), a.validation_rows.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(n);
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    EXPECT_EQ(all, expect);
  }
}

TEST(SplitValidation, FractionOutOfRange) {
  EXPECT_THROW(split_validation(10, 1.5, 1), ArgumentError);
  EXPECT_THROW(split_validation(10, 0.0, 1), ArgumentError);
}

TEST(Subsample, SizeIdentityAndStratification) {
  std::vector<std::uint8_t> labels(100000);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3 == 0;
  EXPECT_EQ(subsample_indices(labels, 10000, 1, false).size(), 10000U);
  EXPECT_EQ(subsample_indices(labels, 200000, 1, true).size(), labels.size());

  std::vector<std::uint8_t> mix(1000);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = i < 200;
  const auto idx = subsample_indices(mix, 100, 3, true);
  ASSERT_EQ(idx.size(), 100U);
  const auto attacks = std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return mix[i] == 1; });
  EXPECT_NEAR(static_cast<double>(attacks), 20.0, 1.0);
  EXPECT_EQ(idx, subsample_indices(mix, 100, 3, true));
}

TEST(Subsample, MissingClassIsError) {
  const std::vector<std::uint8_t> labels(50, 0);
  EXPECT_THROW(subsample_indices(labels, 10, 1, true), ArgumentError);
  EXPECT_THROW(subsample_indices(labels, 1, 1, false), ArgumentError);
}

TEST(Prepare, DeterministicAndFitOnTrainOnly) {
  std::string train, test;
  RngStream rng(9);
  const char* protos[] = {"tcp", "udp", "icmp"};
  for (int i = 0; i < 200; ++i)
    train += std::to_string(rng.uniform01()) + "," + protos[i % 3] + "," + std::to_string(i) + "," +
             (i % 4 == 0 ? "attack" : "normal") + "\n";
  for (int i = 0; i < 50; ++i)
    test += std::to_string(rng.uniform01() * 3) + ",sctp," + std::to_string(i * 10) + "," +
            (i % 2 ? "attack" : "normal") + "\n";
  const RawTable tr = parse_csv(train, toy_spec()), te = parse_csv(test, toy_spec());
  PrepareOptions opts;
  opts.seed = 4;
  const PreparedData a = prepare(toy_spec(), tr, te, opts);
  const PreparedData b = prepare(toy_spec(), tr, te, opts);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation, b.validation);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.validation.row_count(), 40U);
  EXPECT_EQ(a.train.row_count(), 160U);
  // Unseen test category gets the reserved code, normalized and clipped.
  for (std::size_t r = 0; r < a.test.row_count(); ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_GE(a.test.at(r, c), 0.0);
      EXPECT_LE(a.test.at(r, c), 1.0);
    }
  EXPECT_EQ(a.full_train().row_count(), 200U);
}

TEST(Prepare, WritesCache) {
  const auto dir = std::filesystem::temp_directory_path() / "mofs_prepare_cache_test";
  std::string train;
  for (int i = 0; i < 20; ++i) train += std::to_string(i) + ",tcp,1," + (i % 2 ? "attack" : "normal") + "\n";
  const RawTable tr = parse_csv(train, toy_spec());
  const PreparedData d = prepare(toy_spec(), tr, tr, PrepareOptions{});
  write_prepared_cache(d, dir);
  for (const char* f : {"train.csv", "validation.csv", "test.csv", "preprocess.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  std::filesystem::remove_all(dir);
}
