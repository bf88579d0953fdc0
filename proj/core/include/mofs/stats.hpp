#pragma once

#include <cstddef>
#include <span>

namespace mofs {

struct Summary {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for a single value.
  double stddev = 0.0;
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

/// I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of Student's t distribution.
double student_t_two_sided_p(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool significant = false;
  /// Both samples had zero variance; significance was decided by comparing
  /// the means exactly.
  bool degenerate = false;
};

/// Two-sided Welch (unequal variance) t-test of mean(a) vs mean(b).
/// Throws ArgumentError when either sample has fewer than two values.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

/// Two-sided one-sample t-test of mean(a) against a fixed value. Used when
/// the other side of a comparison is a single deterministic result.
/// Throws ArgumentError when `a` has fewer than two values.
WelchResult one_sample_t_test(std::span<const double> a, double value, double alpha = 0.05);

}  // namespace mofs
