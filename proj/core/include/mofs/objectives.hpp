#pragma once

// Wrapper fitness: a genome is scored by training the configured classifier
// on the selected training columns and measuring it on the validation rows.

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mofs/classifiers.hpp"
#include "mofs/dataset.hpp"
#include "mofs/genotype.hpp"
#include "mofs/metrics.hpp"

namespace mofs {

/// Objective sets, all in maximization form:
///   dr3  = (-size, accuracy, detection rate)
///   acc2 = (-size, accuracy)
///   f12  = (-size, F1)
///   acc1 = (accuracy)
enum class Formulation { dr3, acc2, f12, acc1 };

std::size_t arity(Formulation f);
std::string_view to_string(Formulation f);
Formulation parse_formulation(std::string_view text);

using ObjectiveVector = std::vector<double>;

/// Objective vector plus the validation counts it was derived from.
struct Evaluation {
  ObjectiveVector objectives;
  ConfusionMatrix validation;
  std::size_t size = 0;

  bool operator==(const Evaluation&) const = default;
};

/// Popcount of the genome.
inline std::size_t size(const Genome& g) { return g.size(); }

ObjectiveVector make_objectives(const ConfusionMatrix& cm, std::size_t subset_size,
                                Formulation f);

/// Trains on the selected columns of `train` and scores the same columns of
/// `eval`. Throws InternalError for an empty selection.
ConfusionMatrix score_subset(const FeatureTable& train, const FeatureTable& eval,
                             const Genome& g, const TrainConfig& cfg);

/// True iff a >= b componentwise with at least one strict inequality.
/// Throws ArgumentError on arity mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Search-time evaluation state for one run: the training and validation
/// tables only, the wrapper classifier configuration (with a fixed seed),
/// the formulation, and a memo cache keyed by the genome bitstring.
class EvaluationContext {
 public:
  /// Throws ConfigError when the validation rows contain no attacks.
  EvaluationContext(std::shared_ptr<const FeatureTable> train,
                    std::shared_ptr<const FeatureTable> validation, TrainConfig classifier,
                    Formulation formulation);

  Evaluation evaluate_full(const Genome& g) const;
  ObjectiveVector evaluate(const Genome& g) const { return evaluate_full(g).objectives; }

  /// Evaluates a batch on `workers` threads; result order matches input.
  std::vector<Evaluation> evaluate_batch(std::span<const Genome> genomes, std::size_t workers) const;

  std::size_t feature_count() const { return train_->col_count(); }
  Formulation formulation() const { return formulation_; }
  const TrainConfig& classifier() const { return classifier_; }
  const FeatureTable& train() const { return *train_; }
  const FeatureTable& validation() const { return *validation_; }

  std::size_t cache_size() const;
  std::size_t cache_hits() const;

 private:
  std::shared_ptr<const FeatureTable> train_;
  std::shared_ptr<const FeatureTable> validation_;
  TrainConfig classifier_;
  Formulation formulation_;

  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, Evaluation> cache_;
  mutable std::size_t hits_ = 0;
};

}  // namespace mofs
