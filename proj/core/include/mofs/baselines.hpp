#pragma once

// Non-evolutionary comparison methods: sequential forward selection,
// recursive feature elimination by information gain, and PCA.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mofs/dataset.hpp"
#include "mofs/genotype.hpp"
#include "mofs/metrics.hpp"
#include "mofs/objectives.hpp"

namespace mofs {

struct RankedFeatures {
  std::vector<std::size_t> indices;
  std::vector<double> scores;
};

struct SfsResult {
  Genome genome;
  /// Feature added in each round, in order.
  std::vector<std::size_t> added;
  /// Best validation accuracy found in each round.
  std::vector<double> round_accuracy;
};

/// Greedy forward selection on validation accuracy; ties to the lowest
/// feature index. Throws ArgumentError unless 1 <= k <= n.
SfsResult sfs(const EvaluationContext& ctx, std::size_t k);

struct RfeResult {
  Genome genome;
  /// Removed features with the gain they had when removed, in removal order.
  RankedFeatures removed;
};

/// Repeatedly drops the surviving feature with the lowest information gain
/// on the training rows (ties drop the highest index).
RfeResult rfe(const FeatureTable& train, std::size_t k);
inline RfeResult rfe(const EvaluationContext& ctx, std::size_t k) { return rfe(ctx.train(), k); }

/// Symmetric eigendecomposition by cyclic Jacobi rotations. Eigenvalues are
/// returned in descending order; eigenvectors are the columns of the
/// row-major n x n `vectors`.
struct EigenResult {
  std::vector<double> values;
  std::vector<double> vectors;
  std::size_t sweeps = 0;
};
EigenResult jacobi_eigen(std::vector<double> matrix, std::size_t n, double tolerance = 1e-10);

struct PcaModel {
  std::size_t input_dim = 0;
  std::size_t components = 0;
  /// Row-major input_dim x components; columns are orthonormal.
  std::vector<double> component_matrix;
  std::vector<double> column_means;
  std::vector<double> explained_variance;

  double component(std::size_t feature, std::size_t k) const {
    return component_matrix[feature * components + k];
  }
};

/// Throws ArgumentError unless 1 <= k <= min(n, rows).
PcaModel pca_fit(const FeatureTable& train, std::size_t k);
/// Centered rows times the component matrix; labels are carried over.
FeatureTable pca_transform(const FeatureTable& table, const PcaModel& model);

enum class BaselineMethod { sfs, rfe, pca, basic };
std::string_view to_string(BaselineMethod m);
BaselineMethod parse_baseline_method(std::string_view text);

/// Search-time context plus the tables used for the final classifier.
struct BaselineInputs {
  const EvaluationContext& search;
  const FeatureTable& final_train;
  const FeatureTable& test;
};

struct BaselinePoint {
  std::size_t k = 0;
  /// Empty for PCA, whose columns are components rather than features.
  std::optional<Genome> genome;
  ConfusionMatrix test;
};

struct BaselineResult {
  BaselineMethod method = BaselineMethod::sfs;
  BaselinePoint best;
  std::vector<BaselinePoint> grid;
  std::vector<std::string> warnings;
};

/// The k-grid used by default.
inline constexpr std::size_t kDefaultBaselineGrid[] = {5, 10, 15, 20, 25};

/// Runs the method at each feasible k, trains the final classifier and
/// keeps the k with the highest test accuracy (first maximum wins). `basic`
/// ignores the grid and uses all features.
BaselineResult run_baseline_grid(BaselineMethod method, const BaselineInputs& inputs,
                                 std::span<const std::size_t> grid = kDefaultBaselineGrid);

}  // namespace mofs
