#pragma once

// Wrapper classifiers: CART decision tree, logistic regression and random
// forest, plus the split-quality functions shared with feature ranking.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mofs/dataset.hpp"

namespace mofs {

enum class ClassifierKind { cart, logreg, forest };

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(std::string_view text);

struct CartParams {
  std::size_t max_depth = 20;
  std::size_t min_samples_split = 2;
};

struct LogRegParams {
  double learning_rate = 0.1;
  std::size_t epochs = 200;
  double l2_penalty = 0.0;
};

struct ForestParams {
  std::size_t tree_count = 100;
  /// 0 selects ceil(sqrt(m)) for m input columns.
  std::size_t features_per_split = 0;
  bool bootstrap = true;
};

/// Classifier choice and hyperparameters. The defaults are the "default
/// classifier parameters" used throughout the experiments.
struct TrainConfig {
  ClassifierKind kind = ClassifierKind::cart;
  CartParams cart;
  LogRegParams logreg;
  ForestParams forest;
  std::uint64_t seed = 0;

  /// Throws ConfigError on non-positive counts or learning rate.
  void validate() const;
};

/// 1 - p0^2 - p1^2. Throws ArgumentError when both counts are zero.
double gini_impurity(std::size_t count0, std::size_t count1);

/// Binary entropy in bits of a two-class count pair (0 for an empty pair).
double entropy(std::size_t count0, std::size_t count1);

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double weighted_gini = 0.0;
};

/// Best Gini split over `candidate_features` (columns of `table`), using
/// midpoints between consecutive distinct values. Rows with value <=
/// threshold go left. Ties go to the lowest feature index, then the lowest
/// threshold. Returns nullopt when no split lowers the node impurity.
std::optional<SplitChoice> best_split(const FeatureTable& table,
                                      std::span<const std::size_t> candidate_features);

/// Entropy of the labels minus the weighted child entropy at the feature's
/// best single threshold. Throws ArgumentError for fewer than two rows.
double information_gain(std::span<const double> feature_column,
                        std::span<const std::uint8_t> labels);

struct TreeNode {
  // Leaves have left == right == -1.
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::size_t feature = 0;
  double threshold = 0.0;
  std::uint8_t label = 0;
  std::size_t count0 = 0;
  std::size_t count1 = 0;

  bool is_leaf() const { return left < 0; }
  bool operator==(const TreeNode&) const = default;
};

/// Flat binary tree; node 0 is the root.
class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t feature_count);

  std::uint8_t predict_row(std::span<const double> row) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
  std::size_t feature_count() const { return feature_count_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t feature_count_ = 0;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const LogRegModel&) const = default;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::uint64_t seed = 0;
  std::size_t feature_count = 0;

  bool operator==(const ForestModel&) const = default;
};

/// Throws ArgumentError on an empty table.
DecisionTree train_cart(const FeatureTable& table, const CartParams& params);

/// Mean cross-entropy plus 0.5 * l2 * |w|^2 (bias not penalized).
double logreg_loss(const LogRegModel& model, const FeatureTable& table, double l2_penalty);

/// Analytic gradient of logreg_loss; the last entry is d/d(bias).
std::vector<double> logreg_gradient(const LogRegModel& model, const FeatureTable& table,
                                    double l2_penalty);

/// Full-batch gradient descent from zero weights. When `loss_trace` is
/// given it receives epochs + 1 values: the loss before the first update
/// and after every epoch. Throws NumericError if the loss becomes non-finite.
LogRegModel train_logreg(const FeatureTable& table, const LogRegParams& params,
                         std::vector<double>* loss_trace = nullptr);

/// Trees are seeded from (seed, tree index) so they can be built in any order.
ForestModel train_forest(const FeatureTable& table, const ForestParams& params,
                         const CartParams& cart, std::uint64_t seed);

using Model = std::variant<DecisionTree, LogRegModel, ForestModel>;

class Classifier {
 public:
  Classifier() = default;
  Classifier(Model model, std::size_t feature_count)
      : model_(std::move(model)), feature_count_(feature_count) {}

  const Model& model() const { return model_; }
  std::size_t feature_count() const { return feature_count_; }
  ClassifierKind kind() const;

  bool operator==(const Classifier&) const = default;

 private:
  Model model_;
  std::size_t feature_count_ = 0;
};

Classifier train(const FeatureTable& table, const TrainConfig& cfg);

std::uint8_t predict_row(const DecisionTree& tree, std::span<const double> row);
std::uint8_t predict_row(const LogRegModel& model, std::span<const double> row);
/// Majority vote; ties go to attack.
std::uint8_t predict_row(const ForestModel& forest, std::span<const double> row);

/// Throws ArgumentError when the table width differs from the model's.
std::vector<std::uint8_t> predict(const Classifier& model, const FeatureTable& table);

/// Line-oriented text format, see write_model in classifiers.cpp.
void write_model(std::ostream& out, const Classifier& model);
Classifier read_model(std::istream& in);

}  // namespace mofs
