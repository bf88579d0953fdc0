#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mofs/classifiers.hpp"
#include "mofs/rng.hpp"

namespace mofs::detail {

/// Best threshold for one feature given the node's samples in ascending
/// value order. `values` and `labels` are parallel arrays.
struct FeatureScan {
  bool found = false;
  double threshold = 0.0;
  double weighted_gini = 0.0;
};

FeatureScan scan_sorted_gini(std::span<const double> values, std::span<const std::uint8_t> labels,
                             std::size_t total0, std::size_t total1);

/// Grows a CART tree over `samples` (row indices into `table`, duplicates
/// allowed for bootstrap samples). When `features_per_split` is smaller
/// than the column count, each node draws that many candidate columns from
/// `rng`.
DecisionTree grow_tree(const FeatureTable& table, std::vector<std::uint32_t> samples,
                       const CartParams& params, std::size_t features_per_split,
                       RngStream* rng);

}  // namespace mofs::detail
