#include <algorithm>
#include <cmath>
#include <limits>

#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

namespace {

// Solves a * x = b in place by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

std::vector<ObjectiveVector> nsga3_normalize(std::span<const ObjectiveVector> points,
                                             std::span<const std::size_t> subset) {
  if (subset.empty()) return {};
  const std::size_t m = points[subset[0]].size();
  const std::size_t k = subset.size();

  // Minimization form translated so the ideal point is the origin.
  std::vector<ObjectiveVector> t(k, ObjectiveVector(m));
  ObjectiveVector ideal(m, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], -points[subset[i]][j]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i][j] = -points[subset[i]][j] - ideal[j];

  // Extreme point per axis: minimizer of the achievement scalarizing function.
  std::vector<std::vector<double>> extremes(m, std::vector<double>(m));
  for (std::size_t axis = 0; axis < m; ++axis) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double asf = 0.0;
      for (std::size_t j = 0; j < m; ++j) asf = std::max(asf, t[i][j] / (j == axis ? 1.0 : 1e-6));
      if (asf < best) {
        best = asf;
        arg = i;
      }
    }
    extremes[axis] = t[arg];
  }

  ObjectiveVector intercepts(m);
  std::vector<double> plane;
  bool ok = solve_linear(extremes, std::vector<double>(m, 1.0), plane);
  if (ok) {
    for (std::size_t j = 0; j < m; ++j) {
      intercepts[j] = 1.0 / plane[j];
      if (!std::isfinite(intercepts[j]) || intercepts[j] <= 1e-10) ok = false;
    }
  }
  if (!ok) {
    for (std::size_t j = 0; j < m; ++j) {
      double hi = 0.0;
      for (std::size_t i = 0; i < k; ++i) hi = std::max(hi, t[i][j]);
      intercepts[j] = hi;
    }
  }
  for (auto& a : intercepts)
    if (!(a > 1e-10)) a = 1.0;

  for (auto& row : t)
    for (std::size_t j = 0; j < m; ++j) row[j] /= intercepts[j];
  return t;
}

std::vector<std::size_t> nsga3_select(std::span<const ObjectiveVector> points, std::size_t count,
                                      std::span<const ObjectiveVector> references, RngStream& rng,
                                      NichingTrace* trace) {
  if (references.empty()) throw ArgumentError("nsga3_select: no reference points");
  const auto fronts = fast_nondominated_sort(points);
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> members;  // S_t: chosen plus the split front
  std::size_t split_front = fronts.size();
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    if (chosen.size() + fronts[f].size() <= count) {
      chosen.insert(chosen.end(), fronts[f].begin(), fronts[f].end());
      if (chosen.size() == count) return chosen;
      continue;
    }
    split_front = f;
    break;
  }
  if (split_front == fronts.size()) return chosen;
  const auto& last = fronts[split_front];
  members = chosen;
  members.insert(members.end(), last.begin(), last.end());

  const std::size_t m = points[members[0]].size();
  if (references[0].size() != m)
    throw ConfigError("NSGA-III reference dimension does not match objective count");
  const auto normalized = nsga3_normalize(points, members);

  // Associate every member with its closest reference direction.
  const std::size_t nref = references.size();
  std::vector<double> ref_norm2(nref, 0.0);
  for (std::size_t r = 0; r < nref; ++r)
    for (double v : references[r]) ref_norm2[r] += v * v;
  std::vector<std::size_t> assoc(members.size());
  std::vector<double> dist(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& f = normalized[i];
    double f2 = 0.0;
    for (double v : f) f2 += v * v;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < nref; ++r) {
      double dot = 0.0;
      for (std::size_t j = 0; j < m; ++j) dot += f[j] * references[r][j];
      const double d2 = std::max(0.0, f2 - dot * dot / ref_norm2[r]);
      if (d2 < best) {
        best = d2;
        assoc[i] = r;
      }
    }
    dist[i] = std::sqrt(best);
  }

  std::vector<std::size_t> niche(nref, 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) ++niche[assoc[i]];

  // Candidates from the split front, grouped by direction.
  std::vector<std::vector<std::size_t>> candidates(nref);  // positions in `members`
  for (std::size_t i = chosen.size(); i < members.size(); ++i) candidates[assoc[i]].push_back(i);

  std::vector<bool> excluded(nref, false);
  std::size_t remaining = count - chosen.size();
  while (remaining > 0) {
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < nref; ++r)
      if (!excluded[r]) min_count = std::min(min_count, niche[r]);
    std::vector<std::size_t> ties;
    for (std::size_t r = 0; r < nref; ++r)
      if (!excluded[r] && niche[r] == min_count) ties.push_back(r);
    const std::size_t r = ties[static_cast<std::size_t>(rng.below(ties.size()))];
    auto& cand = candidates[r];
    if (cand.empty()) {
      excluded[r] = true;
      continue;
    }
    std::size_t pick_pos = 0;
    if (niche[r] == 0) {
      for (std::size_t c = 1; c < cand.size(); ++c)
        if (dist[cand[c]] < dist[cand[pick_pos]]) pick_pos = c;
    } else {
      pick_pos = static_cast<std::size_t>(rng.below(cand.size()));
    }
    if (trace) {
      std::size_t min_avail = std::numeric_limits<std::size_t>::max();
      for (std::size_t q = 0; q < nref; ++q)
        if (!candidates[q].empty()) min_avail = std::min(min_avail, niche[q]);
      trace->direction.push_back(r);
      trace->count_at_pick.push_back(niche[r]);
      trace->min_available_count.push_back(min_avail);
    }
    chosen.push_back(members[cand[pick_pos]]);
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pick_pos));
    ++niche[r];
    --remaining;
  }
  return chosen;
}

Population nsga3_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, std::span<const ObjectiveVector> references,
                            RngStream& variation_rng, RngStream& niching_rng,
                            NichingTrace* trace) {
  const std::size_t p = pop.size();
  if (p == 0) throw ArgumentError("nsga3_generation: empty population");

  // Mating partners are drawn uniformly at random.
  std::vector<std::size_t> pool(p);
  for (auto& slot : pool) slot = static_cast<std::size_t>(variation_rng.below(p));
  auto children = make_offspring(pop, pool, p, params, variation_rng);
  Population offspring = evaluate_genomes(std::move(children), ctx, params.workers);

  Population combined = std::move(pop);
  combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
  std::vector<ObjectiveVector> pts;
  pts.reserve(combined.size());
  for (const auto& ind : combined) pts.push_back(ind.objectives());

  Population next;
  next.reserve(p);
  for (std::size_t i : nsga3_select(pts, p, references, niching_rng, trace))
    next.push_back(std::move(combined[i]));
  return next;
}

}  // namespace mofs
