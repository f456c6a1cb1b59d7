#pragma once

// Small statistics kit: least squares, medians, running moments, and the
// Kendall trend test used for "bounded up to a constant" checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace dvcover::stats {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

/// Median of a copy (average of the two middle values for even sizes).
inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

/// Mean and standard error of the mean, accumulated in index order.
struct SampleSummary {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  double variance = 0.0;
  std::size_t count = 0;
};

inline SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  // Welford, fixed order.
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  s.mean = mean;
  if (n > 1) {
    s.variance = m2 / static_cast<double>(n - 1);
    s.stderr_of_mean = std::sqrt(s.variance / static_cast<double>(n));
  }
  return s;
}

/// Kendall's S = sum_{i<j} sign(y_j - y_i) against the index order.
inline int kendall_s(std::span<const double> y) {
  int s = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) s += (y[j] > y[i]) - (y[j] < y[i]);
  return s;
}

/// One-sided p-value P(S >= s_obs) under the no-trend null (no ties).
///
/// Exact via the inversion-count distribution for n <= 50, normal
/// approximation with continuity correction beyond.
inline double kendall_increasing_p_value(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) return 1.0;
  const int s_obs = kendall_s(y);
  if (n <= 50) {
    // counts[i] = number of permutations of size m with i inversions.
    const std::size_t max_inv = n * (n - 1) / 2;
    std::vector<double> counts(max_inv + 1, 0.0);
    counts[0] = 1.0;
    for (std::size_t m = 2; m <= n; ++m) {
      std::vector<double> next(max_inv + 1, 0.0);
      for (std::size_t i = 0; i <= max_inv; ++i) {
        if (counts[i] == 0.0) continue;
        for (std::size_t add = 0; add < m && i + add <= max_inv; ++add) next[i + add] += counts[i];
      }
      counts = std::move(next);
    }
    // S = max_inv - 2 * inversions, where inversions counts discordant pairs.
    double total = 0.0, tail = 0.0;
    for (std::size_t inv = 0; inv <= max_inv; ++inv) {
      total += counts[inv];
      const long s = static_cast<long>(max_inv) - 2 * static_cast<long>(inv);
      if (s >= s_obs) tail += counts[inv];
    }
    return tail / total;
  }
  const double nn = static_cast<double>(n);
  const double var = nn * (nn - 1.0) * (2.0 * nn + 5.0) / 18.0;
  const double z = (static_cast<double>(s_obs) - 1.0) / std::sqrt(var);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace dvcover::stats
