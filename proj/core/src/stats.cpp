#include "mofs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mofs/errors.hpp"

namespace mofs {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    s.mean = values.front();
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ArgumentError("incomplete beta: a and b must be positive");
  if (x < 0.0 || x > 1.0) throw ArgumentError("incomplete beta: x must be in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("student t: degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2)
    throw ArgumentError("welch_t_test: each sample needs at least two values");
  const Summary sa = summarize(a), sb = summarize(b);
  const double va = sa.stddev * sa.stddev / static_cast<double>(sa.count);
  const double vb = sb.stddev * sb.stddev / static_cast<double>(sb.count);

  WelchResult r;
  if (va + vb == 0.0) {
    r.degenerate = true;
    r.df = static_cast<double>(sa.count + sb.count - 2);
    if (sa.mean == sb.mean) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = sa.mean > sb.mean ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    r.significant = r.p < alpha;
    return r;
  }
  r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
  const double na1 = static_cast<double>(sa.count - 1), nb1 = static_cast<double>(sb.count - 1);
  r.df = (va + vb) * (va + vb) / (va * va / na1 + vb * vb / nb1);
  r.p = student_t_two_sided_p(r.t, r.df);
  r.significant = r.p < alpha;
  return r;
}

WelchResult one_sample_t_test(std::span<const double> a, double value, double alpha) {
  if (a.size() < 2) throw ArgumentError("one_sample_t_test: the sample needs at least two values");
  const Summary sa = summarize(a);
  WelchResult r;
  r.df = static_cast<double>(sa.count - 1);
  if (sa.stddev == 0.0) {
    r.degenerate = true;
    if (sa.mean == value) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = sa.mean > value ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
  } else {
    r.t = (sa.mean - value) / (sa.stddev / std::sqrt(static_cast<double>(sa.count)));
    r.p = student_t_two_sided_p(r.t, r.df);
  }
  r.significant = r.p < alpha;
  return r;
}

}  // namespace mofs
