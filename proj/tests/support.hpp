#pragma once

// Shared fixtures: small tables and the synthetic feature-selection
// instance used by several suites.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

#include "mofs/dataset.hpp"
#include "mofs/moea.hpp"
#include "mofs/objectives.hpp"

namespace mofs::testing {

/// Table from explicit rows.
FeatureTable table_from_rows(const std::vector<std::vector<double>>& rows,
                             const std::vector<std::uint8_t>& labels);

/// Uniform [0,1) features; the label is 1 iff x0 + x1 > 1. Columns 2.. are
/// noise. `flip` is the probability of flipping each label.
FeatureTable synthetic_table(std::size_t rows, std::size_t features, std::uint64_t seed,
                             double flip = 0.0);

/// Train/validation split of a synthetic table (80/20, unstratified).
struct SyntheticSplit {
  std::shared_ptr<const FeatureTable> train;
  std::shared_ptr<const FeatureTable> validation;
};
SyntheticSplit synthetic_split(std::size_t rows, std::size_t features, std::uint64_t seed,
                               double flip = 0.0);

/// Every nonempty subset of n features, in bitmask order.
std::vector<Genome> all_subsets(std::size_t n);

/// Nondominated objective vectors among `points` (duplicates kept once).
std::vector<ObjectiveVector> nondominated(const std::vector<ObjectiveVector>& points);

/// O(N^2 M) reference partition into fronts.
FrontPartition brute_force_fronts(const std::vector<ObjectiveVector>& points);

}  // namespace mofs::testing
