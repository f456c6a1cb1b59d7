#pragma once

// Densities of the multiplicative chaos approximants for one covering
// realization:
//   X_k = (1 - 1_{I_k}) / (1 - l_k),   M_k = X_1 ... X_k,   D_k = M_k - M_{k-1},
// with d mu_k = M_k dt.

#include <cmath>
#include <vector>

#include "covering.hpp"
#include "piecewise_density.hpp"

namespace dvcover {

/// Value taken by D_1: M_1 itself (as in the martingale-difference
/// definition) or M_1 - 1 (the reading with M_0 = 1).
enum class FirstDifference { M1, M1_minus_1 };

/// prod_{j<=k} (1 - l_j)^-1, exponentiated once from a sum of logs.
inline double inverse_survival_product(const CoverRealization& r, std::size_t k) {
  double log_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) log_sum -= std::log1p(-r.lengths[j]);
  return std::exp(log_sum);
}

inline PiecewiseDensity density_Xk(const CoverRealization& r, std::size_t k) {
  r.check_stage(k);
  return PiecewiseDensity::indicator(complement(r.arc(k)), 1.0 / (1.0 - r.lengths[k - 1]));
}

inline PiecewiseDensity density_Mk(const CoverRealization& r, std::size_t k) {
  if (k == 0) return PiecewiseDensity::constant(1.0);
  return PiecewiseDensity::indicator(uncovered_set(r, k), inverse_survival_product(r, k));
}

inline PiecewiseDensity density_Dk(const CoverRealization& r, std::size_t k,
                                   FirstDifference d1 = FirstDifference::M1) {
  r.check_stage(k);
  if (k == 1) {
    auto m1 = density_Mk(r, 1);
    return d1 == FirstDifference::M1 ? m1 : m1 - PiecewiseDensity::constant(1.0);
  }
  return density_Mk(r, k) - density_Mk(r, k - 1);
}

/// M_{k-1} (X_k - 1), the factorized form of D_k (with M_0 = 1).
inline PiecewiseDensity density_Dk_factorized(const CoverRealization& r, std::size_t k) {
  return density_Mk(r, k - 1) * (density_Xk(r, k) - PiecewiseDensity::constant(1.0));
}

/// Probe points for pointwise identities: the first `count` points of the
/// base-2 van der Corput (Halton) sequence plus every breakpoint +- offset.
inline std::vector<double> probe_grid(std::initializer_list<const PiecewiseDensity*> densities,
                                      std::size_t count = 4096, double offset = 1e-9) {
  std::vector<double> pts;
  pts.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    double x = 0.0, base = 0.5;
    for (std::size_t v = i; v > 0; v >>= 1, base *= 0.5)
      if (v & 1U) x += base;
    pts.push_back(x);
  }
  for (const auto* d : densities)
    for (double b : d->breaks()) {
      pts.push_back(wrap_unit(b - offset));
      pts.push_back(wrap_unit(b + offset));
    }
  return pts;
}

}  // namespace dvcover
