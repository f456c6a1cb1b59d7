#pragma once

// Piecewise-constant functions on T = [0,1) with exact integrals, shifts and
// Fourier coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "circle_set.hpp"

namespace dvcover {

/// Breakpoints 0 = t_0 < ... < t_m = 1 and value c_i on [t_i, t_{i+1}).
/// Canonical form: no two adjacent segments share a value (the wrap-around
/// pair c_{m-1}, c_0 may, since t = 0 is always a breakpoint).
class PiecewiseDensity {
 public:
  PiecewiseDensity() : PiecewiseDensity(constant(0.0)) {}

  static PiecewiseDensity constant(double c) { return PiecewiseDensity({0.0, 1.0}, {c}); }

  /// `inside` on the set, `outside` off it.
  static PiecewiseDensity indicator(const CircleArcSet& set, double inside, double outside = 0.0) {
    std::vector<double> breaks{0.0};
    std::vector<double> values;
    double cursor = 0.0;
    for (const auto& arc : set.arcs()) {
      if (arc.lo > cursor) {
        values.push_back(outside);
        breaks.push_back(arc.lo);
      }
      values.push_back(inside);
      breaks.push_back(arc.hi);
      cursor = arc.hi;
    }
    if (cursor < 1.0) {
      values.push_back(outside);
      breaks.push_back(1.0);
    }
    return PiecewiseDensity(std::move(breaks), std::move(values));
  }

  /// Validates and canonicalizes. Segments shorter than the endpoint tolerance are absorbed.
  PiecewiseDensity(std::vector<double> breaks, std::vector<double> values) {
    if (breaks.size() != values.size() + 1 || values.empty())
      throw std::invalid_argument("piecewise density needs m+1 breakpoints for m values");
    if (breaks.front() != 0.0 || breaks.back() != 1.0)
      throw std::invalid_argument("breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < breaks.size(); ++i)
      if (!(breaks[i] > breaks[i - 1])) throw std::invalid_argument("breakpoints must be strictly increasing");
    breaks_.reserve(breaks.size());
    values_.reserve(values.size());
    breaks_.push_back(0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double hi = breaks[i + 1];
      if (hi - breaks_.back() <= endpoint_tolerance && i + 1 < values.size()) continue;  // sliver
      if (!values_.empty() && values_.back() == values[i]) {
        breaks_.back() = hi;
      } else {
        values_.push_back(values[i]);
        breaks_.push_back(hi);
      }
    }
    breaks_.back() = 1.0;
    if (breaks_.size() > 2 && breaks_[breaks_.size() - 2] >= 1.0) {
      breaks_.erase(breaks_.end() - 2);
      values_.pop_back();
    }
  }

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t segments() const noexcept { return values_.size(); }

  double operator()(double t) const noexcept {
    t = wrap_unit(t);
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    auto idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (idx >= values_.size()) idx = values_.size() - 1;
    return values_[idx];
  }

  double integral() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * (breaks_[i + 1] - breaks_[i]);
    return total;
  }

  double l1_norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) total += std::abs(values_[i]) * (breaks_[i + 1] - breaks_[i]);
    return total;
  }

  double l2_norm_squared() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * values_[i] * (breaks_[i + 1] - breaks_[i]);
    return total;
  }

  /// t -> f(t + h).
  PiecewiseDensity shifted(double h) const {
    h = wrap_unit(h);
    if (h == 0.0 || values_.size() == 1) return *this;
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) cuts.push_back(wrap_unit(breaks_[i] - h));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> new_breaks{0.0};
    std::vector<double> new_values;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - new_breaks.back() <= endpoint_tolerance && i + 2 < cuts.size()) continue;
      const double mid = 0.5 * (new_breaks.back() + cuts[i + 1]);
      new_values.push_back((*this)(mid + h));
      new_breaks.push_back(cuts[i + 1]);
    }
    new_breaks.back() = 1.0;
    return PiecewiseDensity(std::move(new_breaks), std::move(new_values));
  }

  /// Pointwise op(f, g) on the common refinement of both breakpoint sets.
  template <class Op>
  static PiecewiseDensity combine(const PiecewiseDensity& f, const PiecewiseDensity& g, Op op) {
    std::vector<double> breaks{0.0};
    std::vector<double> values;
    std::size_t i = 0, j = 0;
    while (i < f.values_.size() && j < g.values_.size()) {
      const double hi = std::min(f.breaks_[i + 1], g.breaks_[j + 1]);
      values.push_back(op(f.values_[i], g.values_[j]));
      breaks.push_back(hi);
      // Advance every operand whose segment ends within tolerance of hi.
      if (f.breaks_[i + 1] <= hi + endpoint_tolerance) ++i;
      if (g.breaks_[j + 1] <= hi + endpoint_tolerance) ++j;
    }
    breaks.back() = 1.0;
    return PiecewiseDensity(std::move(breaks), std::move(values));
  }

  friend PiecewiseDensity operator+(const PiecewiseDensity& f, const PiecewiseDensity& g) {
    return combine(f, g, std::plus<>{});
  }
  friend PiecewiseDensity operator-(const PiecewiseDensity& f, const PiecewiseDensity& g) {
    return combine(f, g, std::minus<>{});
  }
  friend PiecewiseDensity operator*(const PiecewiseDensity& f, const PiecewiseDensity& g) {
    return combine(f, g, std::multiplies<>{});
  }
  PiecewiseDensity scaled(double a) const {
    auto vals = values_;
    for (auto& v : vals) v *= a;
    return PiecewiseDensity(breaks_, std::move(vals));
  }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

namespace detail {

/// frac(n * t) computed with the rounding error of the product restored.
inline double frac_product(std::int64_t n, double t) noexcept {
  const double nd = static_cast<double>(n);
  const double p = nd * t;
  const double err = std::fma(nd, t, -p);
  double f = (p - std::floor(p)) + err;
  f -= std::floor(f);
  return f;
}

/// exp(-2 pi i n t).
inline std::complex<double> unit_phase(std::int64_t n, double t) noexcept {
  const double angle = -2.0 * std::numbers::pi * frac_product(n, t);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// Exact f^(n) = int_0^1 f(t) e^{-2 pi i n t} dt, summed segment by segment.
inline std::complex<double> fourier_coefficient(const PiecewiseDensity& f, std::int64_t n) {
  if (n == 0) return {f.integral(), 0.0};
  const auto& b = f.breaks();
  const auto& c = f.values();
  std::complex<double> acc{0.0, 0.0};
  std::complex<double> left = detail::unit_phase(n, b[0]);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::complex<double> right = detail::unit_phase(n, b[i + 1]);
    acc += c[i] * (left - right);
    left = right;
  }
  return acc / std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(n));
}

/// Same integral in jump form: (2 pi i n)^-1 sum_i (c_i - c_{i-1}) e^{-2 pi i n t_i}, with c_{-1} = c_{m-1}.
inline std::complex<double> fourier_coefficient_jump_form(const PiecewiseDensity& f, std::int64_t n) {
  if (n == 0) return {f.integral(), 0.0};
  const auto& b = f.breaks();
  const auto& c = f.values();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double jump = c[i] - (i == 0 ? c.back() : c[i - 1]);
    if (jump != 0.0) acc += jump * detail::unit_phase(n, b[i]);
  }
  return acc / std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(n));
}

/// f^(n) for n = first..last (first >= 1), jump form with phase recurrences
/// re-anchored to exact phases every 256 steps.
inline std::vector<std::complex<double>> fourier_coefficients(const PiecewiseDensity& f, std::int64_t first,
                                                              std::int64_t last) {
  if (first < 1 || last < first) throw std::invalid_argument("fourier_coefficients needs 1 <= first <= last");
  const auto& b = f.breaks();
  const auto& c = f.values();
  std::vector<double> jumps;
  std::vector<double> points;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double jump = c[i] - (i == 0 ? c.back() : c[i - 1]);
    if (jump != 0.0) {
      jumps.push_back(jump);
      points.push_back(b[i]);
    }
  }
  const std::size_t count = static_cast<std::size_t>(last - first + 1);
  std::vector<std::complex<double>> out(count, {0.0, 0.0});
  if (jumps.empty()) return out;

  constexpr std::int64_t reanchor = 256;
  std::vector<std::complex<double>> step(jumps.size());
  std::vector<std::complex<double>> phase(jumps.size());
  for (std::size_t q = 0; q < jumps.size(); ++q) step[q] = detail::unit_phase(1, points[q]);
  for (std::int64_t n = first; n <= last; ++n) {
    const bool anchor = (n - first) % reanchor == 0;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t q = 0; q < jumps.size(); ++q) {
      phase[q] = anchor ? detail::unit_phase(n, points[q]) : phase[q] * step[q];
      acc += jumps[q] * phase[q];
    }
    out[static_cast<std::size_t>(n - first)] =
        acc / std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(n));
  }
  return out;
}

inline double total_mass(const PiecewiseDensity& f) noexcept { return f.integral(); }
inline double l1_norm(const PiecewiseDensity& f) noexcept { return f.l1_norm(); }
inline PiecewiseDensity shift(const PiecewiseDensity& f, double h) { return f.shifted(h); }

/// int |f(t + h) - f(t)| dt.
inline double l1_modulus(const PiecewiseDensity& f, double h) { return (f.shifted(h) - f).l1_norm(); }

}  // namespace dvcover
