#include <cmath>

#include "mofs/classifiers.hpp"
#include "mofs/errors.hpp"

namespace mofs {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double linear(const LogRegModel& model, std::span<const double> row) {
  double z = model.bias;
  for (std::size_t j = 0; j < row.size(); ++j) z += model.weights[j] * row[j];
  return z;
}

void check_width(const LogRegModel& model, const FeatureTable& table) {
  if (model.weights.size() != table.col_count())
    throw ArgumentError("logistic regression: weight count does not match table width");
}

}  // namespace

double logreg_loss(const LogRegModel& model, const FeatureTable& table, double l2_penalty) {
  check_width(model, table);
  const std::size_t n = table.row_count();
  if (n == 0) throw ArgumentError("logreg_loss: empty table");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = linear(model, table.row(i));
    sum += softplus(z) - (table.labels()[i] ? z : 0.0);
  }
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return sum / static_cast<double>(n) + 0.5 * l2_penalty * reg;
}

std::vector<double> logreg_gradient(const LogRegModel& model, const FeatureTable& table,
                                    double l2_penalty) {
  check_width(model, table);
  const std::size_t n = table.row_count(), m = table.col_count();
  if (n == 0) throw ArgumentError("logreg_gradient: empty table");
  std::vector<double> grad(m + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = table.row(i);
    const double err = sigmoid(linear(model, row)) - (table.labels()[i] ? 1.0 : 0.0);
    for (std::size_t j = 0; j < m; ++j) grad[j] += err * row[j];
    grad[m] += err;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) grad[j] = grad[j] * inv_n + l2_penalty * model.weights[j];
  grad[m] *= inv_n;
  return grad;
}

LogRegModel train_logreg(const FeatureTable& table, const LogRegParams& params,
                         std::vector<double>* loss_trace) {
  const std::size_t n = table.row_count(), m = table.col_count();
  if (n == 0) throw ArgumentError("train_logreg: empty table");
  LogRegModel model{std::vector<double>(m, 0.0), 0.0};
  if (loss_trace) loss_trace->clear();

  std::vector<double> grad(m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t epoch = 0; epoch <= params.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0, loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto row = table.row(i);
      const double z = linear(model, row);
      const bool y = table.labels()[i] != 0;
      loss += softplus(z) - (y ? z : 0.0);
      const double err = sigmoid(z) - (y ? 1.0 : 0.0);
      for (std::size_t j = 0; j < m; ++j) grad[j] += err * row[j];
      grad_b += err;
    }
    double reg = 0.0;
    for (double w : model.weights) reg += w * w;
    loss = loss * inv_n + 0.5 * params.l2_penalty * reg;
    if (!std::isfinite(loss)) throw NumericError("logistic regression loss became non-finite");
    if (loss_trace) loss_trace->push_back(loss);
    if (epoch == params.epochs) break;

    for (std::size_t j = 0; j < m; ++j)
      model.weights[j] -= params.learning_rate * (grad[j] * inv_n + params.l2_penalty * model.weights[j]);
    model.bias -= params.learning_rate * grad_b * inv_n;
  }
  return model;
}

std::uint8_t predict_row(const LogRegModel& model, std::span<const double> row) {
  return sigmoid(linear(model, row)) >= 0.5 ? 1 : 0;
}

}  // namespace mofs
