#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace mofs {

/// Binary confusion matrix with attack (label 1) as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws ArgumentError on length mismatch or labels outside {0, 1}.
ConfusionMatrix confusion(std::span<const std::uint8_t> y_true,
                          std::span<const std::uint8_t> y_pred);

/// (tp + tn) / total. Throws UndefinedMetricError on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

/// Recall of the attack class, tp / (tp + fn). Throws UndefinedMetricError
/// when there are no attack samples.
double detection_rate(const ConfusionMatrix& cm);

/// 2tp / (2tp + fp + fn).
double f1(const ConfusionMatrix& cm);

/// 1 - size / n.
double feature_reduction(std::size_t size, std::size_t n);

struct MetricReport {
  double accuracy = 0.0;
  double detection_rate = 0.0;
  double f1 = 0.0;
  double feature_reduction = 0.0;
  std::size_t subset_size = 0;
};

/// All report metrics at once. F1 is reported as 0 when undefined (no
/// positives predicted or present).
MetricReport make_report(const ConfusionMatrix& cm, std::size_t subset_size, std::size_t n);

}  // namespace mofs
