#include "mofs/objectives.hpp"

#include <cctype>

#include "mofs/errors.hpp"
#include "mofs/parallel.hpp"

namespace mofs {

std::size_t arity(Formulation f) {
  switch (f) {
    case Formulation::dr3: return 3;
    case Formulation::acc2:
    case Formulation::f12: return 2;
    case Formulation::acc1: return 1;
  }
  return 0;
}

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::dr3: return "DR3";
    case Formulation::acc2: return "ACC2";
    case Formulation::f12: return "F12";
    case Formulation::acc1: return "ACC1";
  }
  return "?";
}

Formulation parse_formulation(std::string_view text) {
  std::string t(text);
  for (auto& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "DR3") return Formulation::dr3;
  if (t == "ACC2") return Formulation::acc2;
  if (t == "F12") return Formulation::f12;
  if (t == "ACC1") return Formulation::acc1;
  throw ConfigError("unknown formulation '" + std::string(text) + "'");
}

ObjectiveVector make_objectives(const ConfusionMatrix& cm, std::size_t subset_size,
                                Formulation f) {
  const double neg_size = -static_cast<double>(subset_size);
  switch (f) {
    case Formulation::dr3: return {neg_size, accuracy(cm), detection_rate(cm)};
    case Formulation::acc2: return {neg_size, accuracy(cm)};
    case Formulation::f12: return {neg_size, f1(cm)};
    case Formulation::acc1: return {accuracy(cm)};
  }
  throw InternalError("make_objectives: unknown formulation");
}

ConfusionMatrix score_subset(const FeatureTable& train, const FeatureTable& eval,
                             const Genome& g, const TrainConfig& cfg) {
  if (g.length() != train.col_count() || g.length() != eval.col_count())
    throw ArgumentError("score_subset: genome length does not match table width");
  const auto cols = g.selected();
  if (cols.empty()) throw InternalError("empty feature subset reached evaluation");
  const FeatureTable train_x = train.select_columns(cols);
  const FeatureTable eval_x = eval.select_columns(cols);
  const Classifier model = mofs::train(train_x, cfg);
  return confusion(eval_x.labels(), predict(model, eval_x));
}

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("dominates: arity mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

EvaluationContext::EvaluationContext(std::shared_ptr<const FeatureTable> train,
                                     std::shared_ptr<const FeatureTable> validation,
                                     TrainConfig classifier, Formulation formulation)
    : train_(std::move(train)),
      validation_(std::move(validation)),
      classifier_(classifier),
      formulation_(formulation) {
  if (!train_ || !validation_) throw ArgumentError("EvaluationContext: missing table");
  if (train_->row_count() == 0) throw ConfigError("training split is empty");
  if (train_->col_count() != validation_->col_count())
    throw ArgumentError("EvaluationContext: train and validation widths differ");
  if (validation_->count_label(1) == 0)
    throw ConfigError("validation split contains no attack rows; detection rate is undefined");
  classifier_.validate();
}

Evaluation EvaluationContext::evaluate_full(const Genome& g) const {
  std::string key = g.to_string();
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  Evaluation e;
  e.size = g.size();
  e.validation = score_subset(*train_, *validation_, g, classifier_);
  e.objectives = make_objectives(e.validation, e.size, formulation_);
  std::lock_guard lock(mutex_);
  // A concurrent duplicate computation produced the same value; keep the first.
  return cache_.emplace(std::move(key), std::move(e)).first->second;
}

std::vector<Evaluation> EvaluationContext::evaluate_batch(std::span<const Genome> genomes,
                                                          std::size_t workers) const {
  std::vector<Evaluation> out(genomes.size());
  parallel_for(genomes.size(), workers, [&](std::size_t i) { out[i] = evaluate_full(genomes[i]); });
  return out;
}

std::size_t EvaluationContext::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

std::size_t EvaluationContext::cache_hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

}  // namespace mofs
