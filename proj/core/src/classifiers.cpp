#include "mofs/classifiers.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "mofs/errors.hpp"

namespace mofs {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::cart: return "cart";
    case ClassifierKind::logreg: return "logreg";
    case ClassifierKind::forest: return "forest";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(std::string_view text) {
  if (text == "cart" || text == "dt") return ClassifierKind::cart;
  if (text == "logreg" || text == "lr") return ClassifierKind::logreg;
  if (text == "forest" || text == "rf") return ClassifierKind::forest;
  throw ConfigError("unknown classifier '" + std::string(text) + "'");
}

void TrainConfig::validate() const {
  if (cart.min_samples_split == 0) throw ConfigError("cart.min_samples_split must be positive");
  if (!(logreg.learning_rate > 0.0)) throw ConfigError("logreg.learning_rate must be positive");
  if (logreg.l2_penalty < 0.0) throw ConfigError("logreg.l2_penalty must be non-negative");
  if (forest.tree_count == 0) throw ConfigError("forest.tree_count must be positive");
}

ClassifierKind Classifier::kind() const {
  switch (model_.index()) {
    case 0: return ClassifierKind::cart;
    case 1: return ClassifierKind::logreg;
    default: return ClassifierKind::forest;
  }
}

Classifier train(const FeatureTable& table, const TrainConfig& cfg) {
  switch (cfg.kind) {
    case ClassifierKind::cart:
      return Classifier(train_cart(table, cfg.cart), table.col_count());
    case ClassifierKind::logreg:
      return Classifier(train_logreg(table, cfg.logreg), table.col_count());
    case ClassifierKind::forest:
      if (table.row_count() < 2) throw ArgumentError("train_forest: need at least two rows");
      return Classifier(train_forest(table, cfg.forest, cfg.cart, cfg.seed), table.col_count());
  }
  throw InternalError("train: unknown classifier kind");
}

std::uint8_t predict_row(const DecisionTree& tree, std::span<const double> row) {
  return tree.predict_row(row);
}

std::vector<std::uint8_t> predict(const Classifier& model, const FeatureTable& table) {
  if (table.col_count() != model.feature_count())
    throw ArgumentError(fmt::format("predict: table has {} columns, model expects {}",
                                    table.col_count(), model.feature_count()));
  std::vector<std::uint8_t> out(table.row_count());
  std::visit(
      [&](const auto& m) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = predict_row(m, table.row(i));
      },
      model.model());
  return out;
}

// Text format, one record per line:
//   mofs-model 1
//   kind <cart|logreg|forest>
//   features <m>
// cart:    tree <node count>, then per node
//          "<left> <right> <feature> <threshold> <label> <count0> <count1>"
// logreg:  bias <b>, then "weights <w0> <w1> ..."
// forest:  seed <s>, trees <t>, then t tree blocks as for cart.
// Reals are written in shortest round-trip form.

namespace {

void write_tree(std::ostream& out, const DecisionTree& tree) {
  out << "tree " << tree.nodes().size() << '\n';
  for (const auto& n : tree.nodes())
    out << fmt::format("{} {} {} {} {} {} {}\n", n.left, n.right, n.feature, n.threshold,
                       static_cast<int>(n.label), n.count0, n.count1);
}

std::string expect_key(std::istream& in, std::string_view key) {
  std::string got;
  if (!(in >> got) || got != key)
    throw ParseError(fmt::format("model file: expected '{}', found '{}'", key, got));
  return got;
}

DecisionTree read_tree(std::istream& in, std::size_t features) {
  expect_key(in, "tree");
  std::size_t count = 0;
  if (!(in >> count) || count == 0) throw ParseError("model file: bad node count");
  std::vector<TreeNode> nodes(count);
  for (auto& n : nodes) {
    int label = 0;
    if (!(in >> n.left >> n.right >> n.feature >> n.threshold >> label >> n.count0 >> n.count1))
      throw ParseError("model file: truncated tree node");
    n.label = static_cast<std::uint8_t>(label);
    if (n.left >= static_cast<std::int32_t>(count) || n.right >= static_cast<std::int32_t>(count))
      throw ParseError("model file: child index out of range");
  }
  return DecisionTree(std::move(nodes), features);
}

}  // namespace

void write_model(std::ostream& out, const Classifier& model) {
  out << "mofs-model 1\n";
  out << "kind " << to_string(model.kind()) << '\n';
  out << "features " << model.feature_count() << '\n';
  if (const auto* tree = std::get_if<DecisionTree>(&model.model())) {
    write_tree(out, *tree);
  } else if (const auto* lr = std::get_if<LogRegModel>(&model.model())) {
    out << fmt::format("bias {}\nweights", lr->bias);
    for (double w : lr->weights) out << fmt::format(" {}", w);
    out << '\n';
  } else {
    const auto& forest = std::get<ForestModel>(model.model());
    out << "seed " << forest.seed << "\ntrees " << forest.trees.size() << '\n';
    for (const auto& t : forest.trees) write_tree(out, t);
  }
}

Classifier read_model(std::istream& in) {
  expect_key(in, "mofs-model");
  int version = 0;
  if (!(in >> version) || version != 1) throw ParseError("model file: unsupported version");
  expect_key(in, "kind");
  std::string kind_text;
  in >> kind_text;
  const ClassifierKind kind = parse_classifier_kind(kind_text);
  expect_key(in, "features");
  std::size_t features = 0;
  if (!(in >> features)) throw ParseError("model file: bad feature count");

  switch (kind) {
    case ClassifierKind::cart:
      return Classifier(read_tree(in, features), features);
    case ClassifierKind::logreg: {
      LogRegModel lr;
      expect_key(in, "bias");
      in >> lr.bias;
      expect_key(in, "weights");
      lr.weights.resize(features);
      for (auto& w : lr.weights)
        if (!(in >> w)) throw ParseError("model file: truncated weights");
      return Classifier(std::move(lr), features);
    }
    case ClassifierKind::forest: {
      ForestModel forest;
      forest.feature_count = features;
      std::size_t count = 0;
      expect_key(in, "seed");
      in >> forest.seed;
      expect_key(in, "trees");
      if (!(in >> count)) throw ParseError("model file: bad tree count");
      for (std::size_t t = 0; t < count; ++t) forest.trees.push_back(read_tree(in, features));
      return Classifier(std::move(forest), features);
    }
  }
  throw InternalError("read_model: unknown kind");
}

}  // namespace mofs
