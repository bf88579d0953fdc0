#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::nsga2: return "nsga2";
    case Algorithm::nsga3: return "nsga3";
    case Algorithm::moead: return "moead";
    case Algorithm::ga: return "ga";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "nsga2" || text == "nsga-ii") return Algorithm::nsga2;
  if (text == "nsga3" || text == "nsga-iii") return Algorithm::nsga3;
  if (text == "moead" || text == "moea/d") return Algorithm::moead;
  if (text == "ga") return Algorithm::ga;
  throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

void MoeaParams::validate() const {
  if (population < 2) throw ConfigError("population size must be at least 2");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw ConfigError("crossover probability must be in [0, 1]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw ConfigError("mutation probability must be in [0, 1]");
  if (moead_neighbors == 0) throw ConfigError("MOEA/D neighborhood size must be positive");
}

FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> points) {
  const std::size_t n = points.size();
  FrontPartition fronts;
  if (n == 0) return fronts;
  const std::size_t m = points[0].size();
  for (const auto& p : points)
    if (p.size() != m) throw ArgumentError("fast_nondominated_sort: mixed objective arity");

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
        ++dominators[q];
      } else if (dominates(points[q], points[p])) {
        dominated[q].push_back(p);
        ++dominators[p];
      }
    }
  }
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p)
    if (dominators[p] == 0) current.push_back(p);
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current)
      for (std::size_t q : dominated[p])
        if (--dominators[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points,
                                      std::span<const std::size_t> front) {
  const std::size_t k = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(k, 0.0);
  if (k == 0) return dist;
  if (k <= 2) return std::vector<double>(k, inf);
  const std::size_t m = points[front[0]].size();
  std::vector<std::size_t> order(k);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[front[a]][obj] < points[front[b]][obj];
    });
    const double lo = points[front[order.front()]][obj];
    const double hi = points[front[order.back()]][obj];
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      if (std::isinf(dist[order[i]])) continue;
      dist[order[i]] +=
          (points[front[order[i + 1]]][obj] - points[front[order[i - 1]]][obj]) / range;
    }
  }
  return dist;
}

std::vector<ObjectiveVector> das_dennis_points(std::size_t divisions, std::size_t dimension) {
  if (divisions == 0) throw ArgumentError("das_dennis_points: divisions must be positive");
  if (dimension == 0) throw ArgumentError("das_dennis_points: dimension must be positive");
  std::vector<ObjectiveVector> out;
  std::vector<std::size_t> k(dimension, 0);
  const double p = static_cast<double>(divisions);
  // Enumerate compositions of `divisions` into `dimension` parts in
  // lexicographic order of the leading coordinates.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == dimension) {
      k[pos] = left;
      ObjectiveVector v(dimension);
      for (std::size_t i = 0; i < dimension; ++i) v[i] = static_cast<double>(k[i]) / p;
      out.push_back(std::move(v));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      k[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, divisions);
  return out;
}

double tchebycheff(std::span<const double> f, std::span<const double> w,
                   std::span<const double> z) {
  if (f.size() != w.size() || f.size() != z.size())
    throw ArgumentError("tchebycheff: arity mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (w[i] < 0.0) throw ArgumentError("tchebycheff: negative weight");
    const double wi = w[i] == 0.0 ? 1e-6 : w[i];
    worst = std::max(worst, wi * std::abs(z[i] - f[i]));
  }
  return worst;
}

Decomposition make_decomposition(std::size_t divisions, std::size_t dimension,
                                 std::size_t neighborhood) {
  Decomposition d;
  d.weights = das_dennis_points(divisions, dimension);
  const std::size_t n = d.weights.size();
  const std::size_t t = std::min(std::max<std::size_t>(neighborhood, 1), n);
  d.neighbors.resize(n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < dimension; ++c) {
        const double diff = d.weights[i][c] - d.weights[j][c];
        s += diff * diff;
      }
      dist[j] = {s, j};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(t), dist.end());
    for (std::size_t j = 0; j < t; ++j) d.neighbors[i].push_back(dist[j].second);
  }
  return d;
}

IdealPoint::IdealPoint(std::size_t dimension)
    : values_(dimension, -std::numeric_limits<double>::infinity()) {}

void IdealPoint::update(std::span<const double> f) {
  if (values_.empty()) values_.assign(f.size(), -std::numeric_limits<double>::infinity());
  if (f.size() != values_.size()) throw ArgumentError("IdealPoint: arity mismatch");
  for (std::size_t i = 0; i < f.size(); ++i) values_[i] = std::max(values_[i], f[i]);
}

bool ParetoArchive::insert(const Individual& ind) {
  for (const auto& m : members_) {
    if (m.genome == ind.genome) return false;
    if (dominates(m.objectives(), ind.objectives())) return false;
  }
  std::erase_if(members_, [&](const Individual& m) {
    return dominates(ind.objectives(), m.objectives());
  });
  members_.push_back(ind);
  return true;
}

ParetoArchive nondominated_archive(const Population& pop) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(pop.size());
  for (const auto& ind : pop) pts.push_back(ind.objectives());
  ParetoArchive archive;
  if (pop.empty()) return archive;
  const auto fronts = fast_nondominated_sort(pts);
  for (std::size_t i : fronts[0]) archive.insert(pop[i]);
  return archive;
}

void assign_rank_and_crowding(Population& pop) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(pop.size());
  for (const auto& ind : pop) pts.push_back(ind.objectives());
  const auto fronts = fast_nondominated_sort(pts);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto cd = crowding_distance(pts, fronts[r]);
    for (std::size_t i = 0; i < fronts[r].size(); ++i) {
      pop[fronts[r][i]].rank = r;
      pop[fronts[r][i]].crowding = cd[i];
    }
  }
}

std::vector<std::size_t> nsga2_select(std::span<const ObjectiveVector> points,
                                      std::size_t count) {
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (const auto& front : fast_nondominated_sort(points)) {
    if (chosen.size() + front.size() <= count) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      if (chosen.size() == count) break;
      continue;
    }
    const auto cd = crowding_distance(points, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    for (std::size_t i = 0; chosen.size() < count; ++i) chosen.push_back(front[order[i]]);
    break;
  }
  return chosen;
}

}  // namespace mofs
