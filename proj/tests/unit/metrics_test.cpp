#include <gtest/gtest.h>

#include <vector>

#include "mofs/errors.hpp"
#include "mofs/metrics.hpp"

using namespace mofs;

TEST(Confusion, CountsEachCell) {
  const std::vector<std::uint8_t> y{1, 1, 0, 0}, p{1, 0, 0, 1};
  const ConfusionMatrix cm = confusion(y, p);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 1, 1, 1}));
}

TEST(Confusion, PerfectPredictionAndEmpty) {
  const std::vector<std::uint8_t> y{1, 0, 1, 1, 0};
  const ConfusionMatrix cm = confusion(y, y);
  EXPECT_EQ(cm.fp, 0U);
  EXPECT_EQ(cm.fn, 0U);
  EXPECT_EQ(confusion({}, {}), ConfusionMatrix{});
}

TEST(Confusion, RejectsBadInput) {
  const std::vector<std::uint8_t> a{1, 0}, b{1}, c{1, 2};
  EXPECT_THROW(confusion(a, b), ArgumentError);
  EXPECT_THROW(confusion(a, c), ArgumentError);
}

TEST(Accuracy, Examples) {
  EXPECT_DOUBLE_EQ(accuracy({50, 5, 40, 5}), 0.90);
  EXPECT_EQ(accuracy({3, 0, 4, 0}), 1.0);
  EXPECT_EQ(accuracy({0, 1, 0, 1}), 0.0);
  EXPECT_THROW(accuracy({}), UndefinedMetricError);
}

TEST(DetectionRate, Examples) {
  EXPECT_DOUBLE_EQ(detection_rate({8, 0, 0, 2}), 0.8);
  EXPECT_EQ(detection_rate({5, 3, 2, 0}), 1.0);
  EXPECT_THROW(detection_rate({0, 4, 4, 0}), UndefinedMetricError);
}

TEST(F1, Examples) {
  EXPECT_DOUBLE_EQ(f1({8, 2, 0, 2}), 0.8);
  EXPECT_EQ(f1({6, 0, 3, 0}), 1.0);
  EXPECT_EQ(f1({0, 2, 1, 1}), 0.0);
  EXPECT_THROW(f1({0, 0, 7, 0}), UndefinedMetricError);
}

TEST(FeatureReduction, Examples) {
  EXPECT_NEAR(feature_reduction(10, 41), 0.7561, 1e-4);
  EXPECT_EQ(feature_reduction(0, 41), 1.0);
  EXPECT_EQ(feature_reduction(41, 41), 0.0);
  EXPECT_THROW(feature_reduction(42, 41), ArgumentError);
  EXPECT_THROW(feature_reduction(0, 0), ArgumentError);
}

TEST(MetricReport, AllFields) {
  const MetricReport r = make_report({0, 0, 10, 2}, 3, 10);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.detection_rate, 0.0);
  EXPECT_DOUBLE_EQ(r.feature_reduction, 0.7);
  EXPECT_EQ(r.subset_size, 3U);
}
