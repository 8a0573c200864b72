#pragma once

#include "latshape/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace latshape {

using Cdf = std::function<double(double)>;

// sup |F_emp - F| for sorted samples with optional weights (normalized internally)
inline double ks_statistic(const std::vector<double> &sorted, const Cdf &cdf, const std::vector<double> &weights = {}) {
  if (sorted.empty()) throw MathError("ks_statistic: no samples");
  if (!weights.empty() && weights.size() != sorted.size()) throw MathError("ks_statistic: weight count mismatch");
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw MathError("ks_statistic: samples must be sorted");
  std::size_t m = sorted.size();
  double total = weights.empty() ? static_cast<double>(m) : 0.0;
  for (double w : weights) total += w;
  double below = 0, d = 0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    double mass = 0;
    for (; j < m && sorted[j] == sorted[i]; ++j) mass += weights.empty() ? 1.0 : weights[j];
    double f = cdf(sorted[i]);
    double above = below + mass;
    d = std::max({d, f - below / total, above / total - f});
    below = above;
    i = j;
  }
  return d;
}

// two-sample statistic sup |F_a - F_b|
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw MathError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0, na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() || j < b.size()) {
    double x = j == b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

inline double uniform_cdf(double x, double lo, double hi) {
  if (x <= lo) return 0;
  if (x >= hi) return 1;
  return (x - lo) / (hi - lo);
}

// CDF of Im z for z distributed by dx dy / y^2 on the standard fundamental domain of SL_2(Z)
inline double hyperbolic_y_cdf(double t) {
  constexpr double pi = std::numbers::pi;
  const double y0 = std::sqrt(3.0) / 2;
  if (t <= y0) return 0;
  if (t >= 1) return 1 - 3 / (pi * t);
  return 3 / pi * (-1 / t + 2 * std::sqrt(1 - t * t) / t + 2 * std::asin(t) - 2 * pi / 3);
}

} // namespace latshape
