#include "mofs/metrics.hpp"

#include "mofs/errors.hpp"

namespace mofs {

ConfusionMatrix confusion(std::span<const std::uint8_t> y_true,
                          std::span<const std::uint8_t> y_pred) {
  if (y_true.size() != y_pred.size())
    throw ArgumentError("confusion: label vectors differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const auto t = y_true[i], p = y_pred[i];
    if (t > 1 || p > 1) throw ArgumentError("confusion: labels must be 0 or 1");
    if (t == 1)
      (p == 1 ? cm.tp : cm.fn)++;
    else
      (p == 1 ? cm.fp : cm.tn)++;
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw UndefinedMetricError("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.tp + cm.fn + cm.fp + cm.tn);
}

double detection_rate(const ConfusionMatrix& cm) {
  if (cm.tp + cm.fn == 0) throw UndefinedMetricError("detection rate without attack samples");
  return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

double f1(const ConfusionMatrix& cm) {
  const std::size_t denom = 2 * cm.tp + cm.fp + cm.fn;
  if (denom == 0) throw UndefinedMetricError("F1 with no positive predictions or samples");
  return static_cast<double>(2 * cm.tp) / static_cast<double>(denom);
}

double feature_reduction(std::size_t size, std::size_t n) {
  if (n == 0 || size > n) throw ArgumentError("feature_reduction: need 0 <= size <= n, n > 0");
  return 1.0 - static_cast<double>(size) / static_cast<double>(n);
}

MetricReport make_report(const ConfusionMatrix& cm, std::size_t subset_size, std::size_t n) {
  MetricReport r;
  r.accuracy = accuracy(cm);
  r.detection_rate = detection_rate(cm);
  r.f1 = (2 * cm.tp + cm.fp + cm.fn) == 0 ? 0.0 : f1(cm);
  r.feature_reduction = feature_reduction(subset_size, n);
  r.subset_size = subset_size;
  return r;
}

}  // namespace mofs
