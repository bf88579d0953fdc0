#include <cmath>
#include <numeric>

#include "mofs/classifiers.hpp"
#include "mofs/errors.hpp"
#include "tree_builder.hpp"

namespace mofs {

namespace {
constexpr std::uint64_t kForestSlot = 0x464f52;
}

ForestModel train_forest(const FeatureTable& table, const ForestParams& params,
                         const CartParams& cart, std::uint64_t seed) {
  const std::size_t n = table.row_count(), m = table.col_count();
  if (n == 0) throw ArgumentError("train_forest: empty table");
  if (params.tree_count == 0) throw ArgumentError("train_forest: tree_count must be positive");
  const std::size_t k =
      params.features_per_split == 0
          ? static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))))
          : params.features_per_split;

  ForestModel forest;
  forest.seed = seed;
  forest.feature_count = m;
  forest.trees.reserve(params.tree_count);
  for (std::size_t t = 0; t < params.tree_count; ++t) {
    RngStream rng(seed, t, kForestSlot);
    std::vector<std::uint32_t> samples(n);
    if (params.bootstrap) {
      for (auto& s : samples) s = static_cast<std::uint32_t>(rng.below(n));
    } else {
      std::iota(samples.begin(), samples.end(), std::uint32_t{0});
    }
    forest.trees.push_back(detail::grow_tree(table, std::move(samples), cart, k, &rng));
  }
  return forest;
}

std::uint8_t predict_row(const ForestModel& forest, std::span<const double> row) {
  std::size_t votes1 = 0;
  for (const auto& tree : forest.trees) votes1 += tree.predict_row(row);
  return 2 * votes1 >= forest.trees.size() ? 1 : 0;
}

}  // namespace mofs
