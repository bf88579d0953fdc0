#include <algorithm>
#include <cmath>
#include <numeric>

#include "mofs/baselines.hpp"
#include "mofs/errors.hpp"

namespace mofs {

EigenResult jacobi_eigen(std::vector<double> a, std::size_t n, double tolerance) {
  if (a.size() != n * n) throw ArgumentError("jacobi_eigen: matrix is not n x n");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += at(r, c) * at(r, c);
    return std::sqrt(s);
  };

  EigenResult out;
  constexpr std::size_t kMaxSweeps = 100;
  while (out.sweeps < kMaxSweeps && off_norm() > tolerance) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return at(x, x) > at(y, y); });
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = v[i * n + order[j]];
  }
  return out;
}

PcaModel pca_fit(const FeatureTable& train, std::size_t k) {
  const std::size_t n = train.col_count(), rows = train.row_count();
  if (k < 1 || k > std::min(n, rows))
    throw ArgumentError("pca_fit: k must satisfy 1 <= k <= min(features, rows)");

  PcaModel model;
  model.input_dim = n;
  model.components = k;
  model.column_means.assign(n, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < n; ++c) model.column_means[c] += train.at(r, c);
  for (auto& m : model.column_means) m /= static_cast<double>(rows);

  std::vector<double> cov(n * n, 0.0);
  std::vector<double> centered(n);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) centered[c] = train.at(r, c) - model.column_means[c];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) cov[i * n + j] += centered[i] * centered[j];
  }
  const double denom = static_cast<double>(std::max<std::size_t>(rows, 2) - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cov[i * n + j] /= denom;
      cov[j * n + i] = cov[i * n + j];
    }

  const EigenResult eig = jacobi_eigen(std::move(cov), n);
  model.component_matrix.assign(n * k, 0.0);
  model.explained_variance.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t j = 0; j < k; ++j) {
    // Sign convention: the largest-magnitude entry is positive.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(eig.vectors[i * n + j]) > std::abs(eig.vectors[arg * n + j])) arg = i;
    const double sign = eig.vectors[arg * n + j] < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) model.component_matrix[i * k + j] = sign * eig.vectors[i * n + j];
  }
  return model;
}

FeatureTable pca_transform(const FeatureTable& table, const PcaModel& model) {
  if (table.col_count() != model.input_dim)
    throw ArgumentError("pca_transform: table width does not match the model");
  const std::size_t rows = table.row_count(), n = model.input_dim, k = model.components;
  std::vector<double> out(rows * k, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const double x = table.at(r, i) - model.column_means[i];
      for (std::size_t j = 0; j < k; ++j) out[r * k + j] += x * model.component(i, j);
    }
  return FeatureTable(rows, k, std::move(out), table.labels());
}

}  // namespace mofs
