#include "mofs/baselines.hpp"

#include <fmt/format.h>

#include "mofs/errors.hpp"

namespace mofs {

std::string_view to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::sfs: return "sfs";
    case BaselineMethod::rfe: return "rfe";
    case BaselineMethod::pca: return "pca";
    case BaselineMethod::basic: return "basic";
  }
  return "?";
}

BaselineMethod parse_baseline_method(std::string_view text) {
  if (text == "sfs") return BaselineMethod::sfs;
  if (text == "rfe") return BaselineMethod::rfe;
  if (text == "pca") return BaselineMethod::pca;
  if (text == "basic") return BaselineMethod::basic;
  throw ConfigError("unknown baseline method '" + std::string(text) + "'");
}

SfsResult sfs(const EvaluationContext& ctx, std::size_t k) {
  const std::size_t n = ctx.feature_count();
  if (k < 1 || k > n) throw ArgumentError(fmt::format("sfs: k must be in [1, {}]", n));
  SfsResult out;
  out.genome = Genome(n);
  for (std::size_t round = 0; round < k; ++round) {
    double best_acc = -1.0;
    std::size_t best_feature = n;
    for (std::size_t f = 0; f < n; ++f) {
      if (out.genome.test(f)) continue;
      Genome trial = out.genome;
      trial.set(f);
      const double acc = accuracy(ctx.evaluate_full(trial).validation);
      if (acc > best_acc) {
        best_acc = acc;
        best_feature = f;
      }
    }
    out.genome.set(best_feature);
    out.added.push_back(best_feature);
    out.round_accuracy.push_back(best_acc);
  }
  return out;
}

RfeResult rfe(const FeatureTable& train, std::size_t k) {
  const std::size_t n = train.col_count();
  if (k < 1 || k > n) throw ArgumentError(fmt::format("rfe: k must be in [1, {}]", n));
  RfeResult out;
  out.genome = Genome::full(n);
  std::vector<double> column(train.row_count());
  std::size_t remaining = n;
  while (remaining > k) {
    double worst_gain = 0.0;
    std::size_t worst = n;
    for (std::size_t f = 0; f < n; ++f) {
      if (!out.genome.test(f)) continue;
      for (std::size_t r = 0; r < train.row_count(); ++r) column[r] = train.at(r, f);
      const double gain = information_gain(column, train.labels());
      // `<=` while scanning upward drops the highest index on ties.
      if (worst == n || gain <= worst_gain) {
        worst_gain = gain;
        worst = f;
      }
    }
    out.genome.set(worst, false);
    out.removed.indices.push_back(worst);
    out.removed.scores.push_back(worst_gain);
    --remaining;
  }
  return out;
}

namespace {

ConfusionMatrix final_scores(const Genome& g, const BaselineInputs& in) {
  return score_subset(in.final_train, in.test, g, in.search.classifier());
}

BaselinePoint run_point(BaselineMethod method, std::size_t k, const BaselineInputs& in) {
  BaselinePoint point;
  point.k = k;
  switch (method) {
    case BaselineMethod::sfs:
      point.genome = sfs(in.search, k).genome;
      point.test = final_scores(*point.genome, in);
      break;
    case BaselineMethod::rfe:
      point.genome = rfe(in.search, k).genome;
      point.test = final_scores(*point.genome, in);
      break;
    case BaselineMethod::pca: {
      const PcaModel model = pca_fit(in.final_train, k);
      const FeatureTable train_x = pca_transform(in.final_train, model);
      const FeatureTable test_x = pca_transform(in.test, model);
      const Classifier clf = train(train_x, in.search.classifier());
      point.test = confusion(test_x.labels(), predict(clf, test_x));
      break;
    }
    case BaselineMethod::basic:
      point.genome = Genome::full(in.final_train.col_count());
      point.test = final_scores(*point.genome, in);
      break;
  }
  return point;
}

}  // namespace

BaselineResult run_baseline_grid(BaselineMethod method, const BaselineInputs& inputs,
                                 std::span<const std::size_t> grid) {
  BaselineResult result;
  result.method = method;
  const std::size_t n = inputs.final_train.col_count();
  if (method == BaselineMethod::basic) {
    result.best = run_point(method, n, inputs);
    result.grid.push_back(result.best);
    return result;
  }
  const std::size_t limit = method == BaselineMethod::pca
                                ? std::min(n, inputs.final_train.row_count())
                                : n;
  for (std::size_t k : grid) {
    if (k < 1 || k > limit) {
      result.warnings.push_back(
          fmt::format("{}: skipping k={} (only {} features available)", to_string(method), k, limit));
      continue;
    }
    result.grid.push_back(run_point(method, k, inputs));
  }
  if (result.grid.empty())
    throw ConfigError(fmt::format("{}: no feasible k in the grid", to_string(method)));
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.grid.size(); ++i)
    if (accuracy(result.grid[i].test) > accuracy(result.grid[best].test)) best = i;
  result.best = result.grid[best];
  return result;
}

}  // namespace mofs
