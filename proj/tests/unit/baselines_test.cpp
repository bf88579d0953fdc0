#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "mofs/baselines.hpp"
#include "mofs/errors.hpp"
#include "mofs/rng.hpp"
#include "support.hpp"

using namespace mofs;
using mofs::testing::synthetic_split;
using mofs::testing::synthetic_table;
using mofs::testing::table_from_rows;

namespace {

// Feature `informative` equals the label; the others are uniform noise.
FeatureTable planted_table(std::size_t rows, std::size_t features, std::size_t informative,
                           std::uint64_t seed) {
  RngStream r(seed);
  std::vector<std::vector<double>> data;
  std::vector<std::uint8_t> labels;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint8_t y = r.coin();
    std::vector<double> row(features);
    for (auto& x : row) x = r.uniform01();
    row[informative] = y;
    data.push_back(row);
    labels.push_back(y);
  }
  return table_from_rows(data, labels);
}

double column_variance(const FeatureTable& t, std::size_t c) {
  double mean = 0, ss = 0;
  for (std::size_t r = 0; r < t.row_count(); ++r) mean += t.at(r, c);
  mean /= static_cast<double>(t.row_count());
  for (std::size_t r = 0; r < t.row_count(); ++r) ss += (t.at(r, c) - mean) * (t.at(r, c) - mean);
  return ss / static_cast<double>(t.row_count() - 1);
}

}  // namespace

TEST(Sfs, FirstRoundPicksBestSingleFeature) {
  const auto split = synthetic_split(300, 6, 4, 0.05);
  const EvaluationContext ctx(split.train, split.validation, TrainConfig{}, Formulation::dr3);
  const SfsResult one = sfs(ctx, 1);
  double best = -1;
  std::size_t arg = 0;
  for (std::size_t f = 0; f < 6; ++f) {
    Genome g(6);
    g.set(f);
    const double acc = accuracy(ctx.evaluate_full(g).validation);
    if (acc > best) best = acc, arg = f;
  }
  EXPECT_EQ(one.added, (std::vector<std::size_t>{arg}));
  EXPECT_EQ(one.round_accuracy.front(), best);
  EXPECT_EQ(sfs(ctx, 6).genome, Genome::full(6));
  EXPECT_THROW(sfs(ctx, 0), ArgumentError);
  EXPECT_THROW(sfs(ctx, 7), ArgumentError);
}

TEST(Sfs, FindsPlantedFeature) {
  const FeatureTable all = planted_table(250, 5, 3, 7);
  std::vector<std::size_t> tr(200), va(50);
  for (std::size_t i = 0; i < 200; ++i) tr[i] = i;
  for (std::size_t i = 0; i < 50; ++i) va[i] = 200 + i;
  const EvaluationContext ctx(std::make_shared<FeatureTable>(all.select_rows(tr)),
                              std::make_shared<FeatureTable>(all.select_rows(va)), TrainConfig{},
                              Formulation::dr3);
  EXPECT_EQ(sfs(ctx, 1).added.front(), 3U);
}

TEST(Rfe, PlantedFeatureSurvives) {
  const FeatureTable t = planted_table(200, 3, 2, 11);
  const RfeResult res = rfe(t, 1);
  EXPECT_EQ(res.genome.selected(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(res.removed.indices.size(), 2U);
  EXPECT_EQ(rfe(t, 1).removed.indices, res.removed.indices);
}

TEST(Rfe, KEqualsNIsFullGenome) {
  const FeatureTable t = synthetic_table(50, 4, 1);
  const RfeResult res = rfe(t, 4);
  EXPECT_EQ(res.genome, Genome::full(4));
  EXPECT_TRUE(res.removed.indices.empty());
}

TEST(Rfe, ShrinksByOnePerIteration) {
  const FeatureTable t = synthetic_table(120, 7, 5, 0.1);
  for (std::size_t k = 1; k <= 7; ++k) {
    const RfeResult res = rfe(t, k);
    EXPECT_EQ(res.genome.size(), k);
    EXPECT_EQ(res.removed.indices.size(), 7 - k);
  }
}

TEST(Jacobi, DiagonalizesSymmetricMatrix) {
  const std::vector<double> m{4, 1, 2, 1, 3, 0, 2, 0, 5};
  const EigenResult e = jacobi_eigen(m, 3);
  EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
  EXPECT_NEAR(e.values[0] + e.values[1] + e.values[2], 12.0, 1e-10);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) {
      double mv = 0;
      for (std::size_t j = 0; j < 3; ++j) mv += m[i * 3 + j] * e.vectors[j * 3 + k];
      EXPECT_NEAR(mv, e.values[k] * e.vectors[i * 3 + k], 1e-9);
    }
}

TEST(Pca, DiagonalLineDirection) {
  RngStream r(3);
  std::vector<std::vector<double>> rows;
  std::vector<std::uint8_t> labels;
  for (int i = 0; i < 500; ++i) {
    const double t = r.uniform01();
    rows.push_back({t + 0.01 * (r.uniform01() - 0.5), t + 0.01 * (r.uniform01() - 0.5)});
    labels.push_back(i % 2);
  }
  const PcaModel m = pca_fit(table_from_rows(rows, labels), 1);
  EXPECT_NEAR(m.component(0, 0), 1 / std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(m.component(1, 0), 1 / std::sqrt(2.0), 1e-2);
}

TEST(Pca, FullBasisIsIsometry) {
  const FeatureTable t = synthetic_table(40, 5, 9);
  const FeatureTable p = pca_transform(t, pca_fit(t, 5));
  for (std::size_t a = 0; a < t.row_count(); ++a)
    for (std::size_t b = a + 1; b < t.row_count(); ++b) {
      double d0 = 0, d1 = 0;
      for (std::size_t c = 0; c < 5; ++c) {
        d0 += std::pow(t.at(a, c) - t.at(b, c), 2);
        d1 += std::pow(p.at(a, c) - p.at(b, c), 2);
      }
      EXPECT_NEAR(std::sqrt(d0), std::sqrt(d1), 1e-8);
    }
  EXPECT_EQ(p.labels(), t.labels());
}

TEST(Pca, VarianceOrderAndSign) {
  const FeatureTable t = synthetic_table(200, 6, 2);
  const PcaModel m = pca_fit(t, 6);
  const FeatureTable p = pca_transform(t, m);
  for (std::size_t k = 1; k < 6; ++k) EXPECT_LE(column_variance(p, k), column_variance(p, k - 1) + 1e-12);
  for (std::size_t k = 0; k < 6; ++k) {
    double largest = 0;
    for (std::size_t f = 0; f < 6; ++f)
      if (std::abs(m.component(f, k)) > std::abs(largest)) largest = m.component(f, k);
    EXPECT_GT(largest, 0.0);
  }
  EXPECT_THROW(pca_fit(t, 0), ArgumentError);
  EXPECT_THROW(pca_fit(t, 7), ArgumentError);
}

TEST(Pca, ReconstructionErrorNonIncreasing) {
  const FeatureTable t = synthetic_table(100, 5, 12);
  double prev = 1e300;
  for (std::size_t k = 1; k <= 5; ++k) {
    const PcaModel m = pca_fit(t, k);
    const FeatureTable p = pca_transform(t, m);
    double err = 0;
    for (std::size_t r = 0; r < t.row_count(); ++r)
      for (std::size_t f = 0; f < 5; ++f) {
        double rec = m.column_means[f];
        for (std::size_t c = 0; c < k; ++c) rec += p.at(r, c) * m.component(f, c);
        err += std::pow(t.at(r, f) - rec, 2);
      }
    EXPECT_LE(err, prev + 1e-9);
    prev = err;
  }
}

TEST(BaselineGrid, SkipsInfeasibleKAndPicksFirstMaximum) {
  const auto split = synthetic_split(300, 6, 6, 0.05);
  const FeatureTable test = synthetic_table(100, 6, 99);
  const EvaluationContext ctx(split.train, split.validation, TrainConfig{}, Formulation::dr3);
  const FeatureTable full = split.train->concat(*split.validation);
  const BaselineInputs in{ctx, full, test};
  const std::vector<std::size_t> grid{2, 4, 8};
  for (auto method : {BaselineMethod::sfs, BaselineMethod::rfe, BaselineMethod::pca}) {
    const BaselineResult res = run_baseline_grid(method, in, grid);
    ASSERT_EQ(res.grid.size(), 2U);
    EXPECT_EQ(res.warnings.size(), 1U);
    double best = -1;
    std::size_t best_k = 0;
    for (const auto& p : res.grid)
      if (accuracy(p.test) > best) best = accuracy(p.test), best_k = p.k;
    EXPECT_EQ(res.best.k, best_k);
    EXPECT_EQ(res.best.genome.has_value(), method != BaselineMethod::pca);
  }
  const BaselineResult basic = run_baseline_grid(BaselineMethod::basic, in, grid);
  EXPECT_EQ(basic.best.k, 6U);
}
