#include <algorithm>

#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

namespace {

using Point2 = std::pair<double, double>;

// Area dominated by 2D points above (rx, ry).
double sweep_2d(std::vector<Point2> pts, double rx, double ry) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
  });
  double area = 0.0, best_y = ry;
  for (const auto& [x, y] : pts) {
    if (y > best_y) {
      area += (x - rx) * (y - best_y);
      best_y = y;
    }
  }
  return area;
}

}  // namespace

double hypervolume(std::span<const ObjectiveVector> points, std::span<const double> reference) {
  const std::size_t m = reference.size();
  if (m == 0 || m > 3) throw ArgumentError("hypervolume: supports 1 to 3 objectives");
  for (const auto& p : points) {
    if (p.size() != m) throw ArgumentError("hypervolume: arity mismatch");
    for (std::size_t i = 0; i < m; ++i)
      if (p[i] < reference[i])
        throw ArgumentError("hypervolume: point does not dominate the reference point");
  }
  if (points.empty()) return 0.0;

  if (m == 1) {
    double best = reference[0];
    for (const auto& p : points) best = std::max(best, p[0]);
    return best - reference[0];
  }
  if (m == 2) {
    std::vector<Point2> pts;
    for (const auto& p : points) pts.emplace_back(p[0], p[1]);
    return sweep_2d(std::move(pts), reference[0], reference[1]);
  }

  // Slice along the third objective from the top down.
  std::vector<const ObjectiveVector*> sorted;
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectiveVector* a, const ObjectiveVector* b) { return (*a)[2] > (*b)[2]; });
  double volume = 0.0;
  std::vector<Point2> active;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    active.emplace_back((*sorted[i])[0], (*sorted[i])[1]);
    const double z_hi = (*sorted[i])[2];
    const double z_lo = i + 1 < sorted.size() ? (*sorted[i + 1])[2] : reference[2];
    if (z_hi > z_lo) volume += sweep_2d(active, reference[0], reference[1]) * (z_hi - z_lo);
  }
  return volume;
}

}  // namespace mofs
