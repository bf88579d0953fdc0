#include "support.hpp"

#include <algorithm>

#include "mofs/rng.hpp"

namespace mofs::testing {

FeatureTable table_from_rows(const std::vector<std::vector<double>>& rows,
                             const std::vector<std::uint8_t>& labels) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  return FeatureTable(rows.size(), cols, std::move(values), labels);
}

FeatureTable synthetic_table(std::size_t rows, std::size_t features, std::uint64_t seed,
                             double flip) {
  RngStream rng(seed, 0, 0x5717);
  std::vector<double> values(rows * features);
  std::vector<std::uint8_t> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < features; ++c) values[r * features + c] = rng.uniform01();
    std::uint8_t y = values[r * features] + values[r * features + 1] > 1.0 ? 1 : 0;
    if (flip > 0.0 && rng.bernoulli(flip)) y ^= 1;
    labels[r] = y;
  }
  return FeatureTable(rows, features, std::move(values), std::move(labels));
}

SyntheticSplit synthetic_split(std::size_t rows, std::size_t features, std::uint64_t seed,
                               double flip) {
  const FeatureTable all = synthetic_table(rows, features, seed, flip);
  const SplitIndices split = split_validation(rows, 0.2, derive_seed(seed, 1));
  return {std::make_shared<const FeatureTable>(all.select_rows(split.train_rows)),
          std::make_shared<const FeatureTable>(all.select_rows(split.validation_rows))};
}

std::vector<Genome> all_subsets(std::size_t n) {
  std::vector<Genome> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) g.set(i);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

bool brute_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

}  // namespace

std::vector<ObjectiveVector> nondominated(const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = brute_dominates(points[j], points[i]);
    if (!dominated && std::find(out.begin(), out.end(), points[i]) == out.end())
      out.push_back(points[i]);
  }
  return out;
}

FrontPartition brute_force_fronts(const std::vector<ObjectiveVector>& points) {
  FrontPartition fronts;
  std::vector<bool> assigned(points.size(), false);
  std::size_t left = points.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (assigned[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < points.size() && !dominated; ++j)
        dominated = !assigned[j] && brute_dominates(points[j], points[i]);
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) assigned[i] = true;
    left -= front.size();
    fronts.push_back(std::move(front));
  }
  return fronts;
}

}  // namespace mofs::testing
