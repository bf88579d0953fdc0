#include <algorithm>
#include <cmath>
#include <numeric>

#include "mofs/classifiers.hpp"
#include "mofs/errors.hpp"
#include "tree_builder.hpp"

namespace mofs {

double gini_impurity(std::size_t count0, std::size_t count1) {
  const std::size_t total = count0 + count1;
  if (total == 0) throw ArgumentError("gini_impurity: both class counts are zero");
  const double p0 = static_cast<double>(count0) / static_cast<double>(total);
  const double p1 = static_cast<double>(count1) / static_cast<double>(total);
  return 1.0 - p0 * p0 - p1 * p1;
}

double entropy(std::size_t count0, std::size_t count1) {
  const std::size_t total = count0 + count1;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : {count0, count1}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

namespace detail {

namespace {

double midpoint(double lo, double hi) {
  double mid = lo + 0.5 * (hi - lo);
  // Adjacent doubles: keep the threshold on the low side so `<=` agrees
  // with the partition the counts were computed for.
  if (!(mid < hi)) mid = lo;
  return mid;
}

}  // namespace

FeatureScan scan_sorted_gini(std::span<const double> values, std::span<const std::uint8_t> labels,
                             std::size_t total0, std::size_t total1) {
  FeatureScan best;
  const std::size_t n = values.size();
  const double nd = static_cast<double>(n);
  std::size_t left0 = 0, left1 = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    (labels[i] ? left1 : left0)++;
    if (!(values[i] < values[i + 1])) continue;
    const std::size_t nl = i + 1, nr = n - nl;
    const std::size_t right0 = total0 - left0, right1 = total1 - left1;
    const double w = (static_cast<double>(nl) * gini_impurity(left0, left1) +
                      static_cast<double>(nr) * gini_impurity(right0, right1)) /
                     nd;
    if (!best.found || w < best.weighted_gini) {
      best.found = true;
      best.weighted_gini = w;
      best.threshold = midpoint(values[i], values[i + 1]);
    }
  }
  return best;
}

namespace {

class TreeGrower {
 public:
  TreeGrower(const FeatureTable& table, std::vector<std::uint32_t> samples,
             const CartParams& params, std::size_t features_per_split, RngStream* rng)
      : table_(table),
        samples_(std::move(samples)),
        params_(params),
        m_(table.col_count()),
        k_(std::min(features_per_split == 0 ? m_ : features_per_split, m_)),
        rng_(rng) {
    const std::size_t n = samples_.size();
    order_.assign(m_, std::vector<std::uint32_t>(n));
    for (std::size_t f = 0; f < m_; ++f) {
      auto& ord = order_[f];
      std::iota(ord.begin(), ord.end(), std::uint32_t{0});
      std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return value(a, f) < value(b, f);
      });
    }
    go_left_.resize(n);
    tmp_.resize(n);
    vals_.resize(n);
    labs_.resize(n);
    all_features_.resize(m_);
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  DecisionTree grow() {
    if (m_ == 0) throw ArgumentError("train_cart: table has no feature columns");
    build(0, samples_.size(), 0);
    return DecisionTree(std::move(nodes_), m_);
  }

 private:
  double value(std::uint32_t pos, std::size_t f) const { return table_.at(samples_[pos], f); }
  std::uint8_t label(std::uint32_t pos) const { return table_.labels()[samples_[pos]]; }

  std::vector<std::size_t> candidates() {
    if (k_ >= m_ || rng_ == nullptr) return all_features_;
    std::vector<std::size_t> pool = all_features_;
    for (std::size_t i = 0; i < k_; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng_->below(m_ - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k_);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  std::int32_t build(std::size_t begin, std::size_t end, std::size_t depth) {
    std::size_t c0 = 0, c1 = 0;
    for (std::size_t i = begin; i < end; ++i) (label(order_[0][i]) ? c1 : c0)++;

    const auto index = static_cast<std::int32_t>(nodes_.size());
    TreeNode node;
    node.count0 = c0;
    node.count1 = c1;
    node.label = c1 >= c0 ? 1 : 0;
    nodes_.push_back(node);

    const std::size_t n = end - begin;
    if (c0 == 0 || c1 == 0 || depth >= params_.max_depth || n < params_.min_samples_split)
      return index;

    const double parent = gini_impurity(c0, c1);
    FeatureScan best;
    std::size_t best_feature = 0;
    for (std::size_t f : candidates()) {
      const auto& ord = order_[f];
      for (std::size_t i = begin; i < end; ++i) {
        vals_[i - begin] = value(ord[i], f);
        labs_[i - begin] = label(ord[i]);
      }
      auto scan = scan_sorted_gini({vals_.data(), n}, {labs_.data(), n}, c0, c1);
      if (scan.found && (!best.found || scan.weighted_gini < best.weighted_gini)) {
        best = scan;
        best_feature = f;
      }
    }
    if (!best.found || !(best.weighted_gini < parent - 1e-12)) return index;

    std::size_t n_left = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t pos = order_[0][i];
      const bool left = value(pos, best_feature) <= best.threshold;
      go_left_[pos] = left ? 1 : 0;
      n_left += left ? 1 : 0;
    }
    for (std::size_t f = 0; f < m_; ++f) {
      auto& ord = order_[f];
      std::size_t l = begin, r = 0;
      for (std::size_t i = begin; i < end; ++i) {
        if (go_left_[ord[i]])
          ord[l++] = ord[i];
        else
          tmp_[r++] = ord[i];
      }
      std::copy(tmp_.begin(), tmp_.begin() + static_cast<std::ptrdiff_t>(r),
                ord.begin() + static_cast<std::ptrdiff_t>(l));
    }

    const std::int32_t left = build(begin, begin + n_left, depth + 1);
    const std::int32_t right = build(begin + n_left, end, depth + 1);
    TreeNode& split = nodes_[static_cast<std::size_t>(index)];
    split.feature = best_feature;
    split.threshold = best.threshold;
    split.left = left;
    split.right = right;
    return index;
  }

  const FeatureTable& table_;
  std::vector<std::uint32_t> samples_;
  CartParams params_;
  std::size_t m_;
  std::size_t k_;
  RngStream* rng_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::uint8_t> go_left_;
  std::vector<std::uint32_t> tmp_;
  std::vector<double> vals_;
  std::vector<std::uint8_t> labs_;
  std::vector<std::size_t> all_features_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree grow_tree(const FeatureTable& table, std::vector<std::uint32_t> samples,
                       const CartParams& params, std::size_t features_per_split,
                       RngStream* rng) {
  if (samples.empty()) throw ArgumentError("train_cart: empty table");
  return TreeGrower(table, std::move(samples), params, features_per_split, rng).grow();
}

}  // namespace detail

std::optional<SplitChoice> best_split(const FeatureTable& table,
                                      std::span<const std::size_t> candidate_features) {
  const std::size_t n = table.row_count();
  if (n < 2) return std::nullopt;
  const std::size_t c1 = table.count_label(1), c0 = n - c1;
  if (c0 == 0 || c1 == 0) return std::nullopt;
  const double parent = gini_impurity(c0, c1);

  std::vector<std::size_t> features(candidate_features.begin(), candidate_features.end());
  std::sort(features.begin(), features.end());
  std::vector<std::size_t> order(n);
  std::vector<double> vals(n);
  std::vector<std::uint8_t> labs(n);

  std::optional<SplitChoice> best;
  for (std::size_t f : features) {
    if (f >= table.col_count()) throw ArgumentError("best_split: feature index out of range");
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return table.at(a, f) < table.at(b, f); });
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = table.at(order[i], f);
      labs[i] = table.labels()[order[i]];
    }
    auto scan = detail::scan_sorted_gini(vals, labs, c0, c1);
    if (scan.found && (!best || scan.weighted_gini < best->weighted_gini))
      best = SplitChoice{f, scan.threshold, scan.weighted_gini};
  }
  if (best && !(best->weighted_gini < parent - 1e-12)) return std::nullopt;
  return best;
}

double information_gain(std::span<const double> feature_column,
                        std::span<const std::uint8_t> labels) {
  const std::size_t n = feature_column.size();
  if (labels.size() != n) throw ArgumentError("information_gain: length mismatch");
  if (n < 2) throw ArgumentError("information_gain: need at least two rows");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return feature_column[a] < feature_column[b];
  });
  std::size_t total1 = 0;
  for (auto l : labels) total1 += l ? 1 : 0;
  const std::size_t total0 = n - total1;
  const double parent = entropy(total0, total1);

  double best = parent;
  std::size_t left0 = 0, left1 = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    (labels[order[i]] ? left1 : left0)++;
    if (!(feature_column[order[i]] < feature_column[order[i + 1]])) continue;
    const std::size_t nl = i + 1, nr = n - nl;
    const double w = (static_cast<double>(nl) * entropy(left0, left1) +
                      static_cast<double>(nr) * entropy(total0 - left0, total1 - left1)) /
                     static_cast<double>(n);
    best = std::min(best, w);
  }
  return std::max(0.0, parent - best);
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t feature_count)
    : nodes_(std::move(nodes)), feature_count_(feature_count) {
  if (nodes_.empty()) throw ArgumentError("DecisionTree: no nodes");
}

std::uint8_t DecisionTree::predict_row(std::span<const double> row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(row[n.feature] <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].label;
}

std::size_t DecisionTree::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[i].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes_[i].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes_[i].right), d + 1);
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

DecisionTree train_cart(const FeatureTable& table, const CartParams& params) {
  if (table.row_count() == 0) throw ArgumentError("train_cart: empty table");
  std::vector<std::uint32_t> samples(table.row_count());
  std::iota(samples.begin(), samples.end(), std::uint32_t{0});
  return detail::grow_tree(table, std::move(samples), params, table.col_count(), nullptr);
}

}  // namespace mofs
