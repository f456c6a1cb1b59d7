#pragma once

// Frequency-side machinery: dyadic blocks with their cancellation shifts,
// the translation identity, weighted l^q norms of Fourier sequences, decay
// exponent regression, and the exponent bookkeeping that makes the martingale
// series summable.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "counter_rng.hpp"
#include "length_sequence.hpp"
#include "piecewise_density.hpp"
#include "stats.hpp"

namespace dvcover {

/// Integer frequencies [first, last) and, for m >= 1, the shift h = 2^{-m-1} l_k, which puts
/// n h in [1/4, 1/2) so that |e^{2 pi i n h} - 1| >= sqrt 2 on the block.
struct FrequencyBlock {
  int m = 0;
  std::int64_t first = 1;
  std::int64_t last = 1;  // exclusive
  double shift = 0.0;

  bool empty() const noexcept { return last <= first; }
  std::int64_t size() const noexcept { return empty() ? 0 : last - first; }
  double center() const noexcept { return 0.5 * static_cast<double>(first + last - 1); }
};

struct DyadicBlocks {
  double ell = 0.0;
  int m_max = 0;
  std::vector<FrequencyBlock> blocks;  // m = 0..m_max

  std::int64_t end() const noexcept { return blocks.back().last; }
};

/// Delta_{k,0} = [1, 1/l) and Delta_{k,m} = [2^{m-1}/l, 2^m/l), m = 1..m_max, over the integers.
inline DyadicBlocks build_blocks(double ell, int m_max) {
  if (!(ell > 0.0 && ell < 1.0)) throw std::domain_error("block length scale must lie in (0,1)");
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  if (std::ldexp(1.0, m_max) / ell > std::ldexp(1.0, 31)) throw std::overflow_error("2^m_max / l exceeds 2^31");
  DyadicBlocks out;
  out.ell = ell;
  out.m_max = m_max;
  auto edge = [ell](int m) { return static_cast<std::int64_t>(std::ceil(std::ldexp(1.0, m) / ell)); };
  out.blocks.push_back({0, 1, std::max<std::int64_t>(1, edge(0)), 0.0});
  for (int m = 1; m <= m_max; ++m) out.blocks.push_back({m, edge(m - 1), edge(m), std::ldexp(ell, -m - 1)});
  return out;
}

/// [2^j, 2^{j+1}) for j = j_min..j_max.
inline std::vector<FrequencyBlock> octave_blocks(int j_min, int j_max) {
  if (j_min < 0 || j_max < j_min || j_max > 30) throw std::invalid_argument("octave range must satisfy 0 <= j_min <= j_max <= 30");
  std::vector<FrequencyBlock> out;
  for (int j = j_min; j <= j_max; ++j)
    out.push_back({j, std::int64_t{1} << j, std::int64_t{1} << (j + 1), 0.0});
  return out;
}

/// |e^{2 pi i n h} - 1|.
inline double cancellation_factor(std::int64_t n, double h) noexcept {
  return std::abs(std::conj(detail::unit_phase(n, h)) - 1.0);
}

/// |int [f(t+h) - f(t)] e^{-2 pi i n t} dt - (e^{2 pi i n h} - 1) f^(n)|, the
/// left side by segment sums of the difference density, the right side by the
/// jump form of f^(n).
inline double translation_identity_residual(const PiecewiseDensity& f, double h, std::int64_t n) {
  const auto lhs = fourier_coefficient(f.shifted(h) - f, n);
  const auto rhs = (std::conj(detail::unit_phase(n, h)) - 1.0) * fourier_coefficient_jump_form(f, n);
  return std::abs(lhs - rhs);
}

struct CancellationCheck {
  double sup_coefficient = 0.0;  // sup |f^(n)| over the eligible n examined
  double modulus = 0.0;          // int |f(t+h) - f(t)| dt
  std::int64_t eligible = 0;
  bool holds() const noexcept { return sup_coefficient <= modulus * (1.0 + 1e-12) + 1e-15; }
};

/// sup over the first `limit` frequencies n >= 1 with |e^{2 pi i n h} - 1| >= 1
/// of |f^(n)|, against the L1 modulus at h.
inline CancellationCheck check_translation_bound(const PiecewiseDensity& f, double h, std::int64_t limit = 1000) {
  CancellationCheck out;
  out.modulus = l1_modulus(f, h);
  for (std::int64_t n = 1; out.eligible < limit; ++n) {
    const double x = detail::frac_product(n, h);
    if (x < 1.0 / 6.0 || x > 5.0 / 6.0) continue;  // |e^{2 pi i x} - 1| < 1
    ++out.eligible;
    out.sup_coefficient = std::max(out.sup_coefficient, std::abs(fourier_coefficient_jump_form(f, n)));
  }
  return out;
}

/// (sum_{n=1}^N n^{tau q / 2} |f^(n)|^q)^{1/q}.
inline double weighted_lq_norm(const PiecewiseDensity& f, double tau, double q, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("weighted_lq_norm needs N >= 1");
  const auto coeffs = fourier_coefficients(f, 1, N);
  // Factor out the largest term so q ~ 20 cannot underflow.
  std::vector<double> logs(coeffs.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(coeffs[i]);
    logs[i] = a > 0.0 ? 0.5 * tau * std::log(static_cast<double>(i + 1)) + std::log(a)
                      : -std::numeric_limits<double>::infinity();
    top = std::max(top, logs[i]);
  }
  if (top == -std::numeric_limits<double>::infinity()) return 0.0;
  double sum = 0.0;
  for (double l : logs) sum += std::exp(q * (l - top));
  return std::exp(top) * std::pow(sum, 1.0 / q);
}

/// Per-realization block statistics: sup |f^(n)|^2 over each block.
struct SpectrumReport {
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::vector<FrequencyBlock> blocks;
  std::vector<double> block_sup2;
};

inline SpectrumReport spectrum_report(const PiecewiseDensity& f, std::vector<FrequencyBlock> blocks,
                                      std::uint64_t seed = 0, std::size_t k = 0) {
  SpectrumReport r;
  r.seed = seed;
  r.k = k;
  r.blocks = std::move(blocks);
  for (const auto& b : r.blocks) {
    double sup = 0.0;
    if (!b.empty())
      for (const auto& c : fourier_coefficients(f, b.first, b.last - 1)) sup = std::max(sup, std::norm(c));
    r.block_sup2.push_back(sup);
  }
  return r;
}

/// Same statistic from an arbitrary coefficient-modulus-squared function.
inline SpectrumReport spectrum_report_from(const std::function<double(std::int64_t)>& abs2,
                                           std::vector<FrequencyBlock> blocks) {
  SpectrumReport r;
  r.blocks = std::move(blocks);
  for (const auto& b : r.blocks) {
    double sup = 0.0;
    for (std::int64_t n = b.first; n < b.last; ++n) sup = std::max(sup, abs2(n));
    r.block_sup2.push_back(sup);
  }
  return r;
}

struct DecayFit {
  double tau_hat = 0.0;
  double stderr_tau = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<double> median_sup2;  // per block in range
};

namespace detail {

inline DecayFit fit_medians(const std::vector<const SpectrumReport*>& members, std::size_t b0, std::size_t b1) {
  DecayFit fit;
  std::vector<double> xs, ys;
  const auto& blocks = members.front()->blocks;
  for (std::size_t b = b0; b <= b1; ++b) {
    std::vector<double> vals;
    vals.reserve(members.size());
    for (const auto* m : members) vals.push_back(m->block_sup2[b]);
    const double med = stats::median(std::move(vals));
    if (!(med > 0.0)) throw std::domain_error("median block sup is zero; decay exponent undefined");
    fit.median_sup2.push_back(med);
    xs.push_back(-std::log2(blocks[b].center()));
    ys.push_back(std::log2(med));
  }
  const auto line = stats::fit_line(xs, ys);
  fit.tau_hat = line.slope;
  fit.intercept = line.intercept;
  fit.r2 = line.r2;
  return fit;
}

}  // namespace detail

/// Regresses log2(ensemble median of block sup |f^|^2) on -log2(block centre)
/// over block indices [first_block, last_block]; the slope estimates tau in
/// |f^(n)|^2 = O(n^-tau). Standard error from `resamples` seeded bootstrap
/// draws over ensemble members.
inline DecayFit decay_exponent(const std::vector<SpectrumReport>& ensemble, std::size_t first_block,
                               std::size_t last_block, std::size_t min_members = 20, int resamples = 200,
                               std::uint64_t bootstrap_seed = 0x5eed) {
  if (ensemble.size() < min_members)
    throw std::invalid_argument("decay_exponent needs at least " + std::to_string(min_members) + " members");
  if (last_block < first_block + 3) throw std::invalid_argument("decay_exponent needs at least 4 blocks");
  for (const auto& r : ensemble)
    if (r.block_sup2.size() <= last_block) throw std::out_of_range("block range exceeds a spectrum report");

  std::vector<const SpectrumReport*> members;
  for (const auto& r : ensemble) members.push_back(&r);
  DecayFit fit = detail::fit_medians(members, first_block, last_block);

  if (resamples > 1) {
    CounterStream rng(bootstrap_seed);
    std::vector<double> slopes;
    std::vector<const SpectrumReport*> draw(members.size());
    for (int b = 0; b < resamples; ++b) {
      for (auto& d : draw) d = members[rng.below(members.size())];
      try {
        slopes.push_back(detail::fit_medians(draw, first_block, last_block).tau_hat);
      } catch (const std::domain_error&) {
        // a resample whose median hits zero carries no slope information
      }
    }
    fit.stderr_tau = std::sqrt(stats::summarize(slopes).variance);
  }
  return fit;
}

struct Exponents {
  double p = 2.0;
  double q = 2.0;
};

/// Left sides of the two exponent conditions:
///   first  = 1 - tau p / 2 - p / q                                    (needs > 0)
///   second = -1 + tau (1 - p/2) - ((1 - tau - D)/2)(p - 1) + p / q     (needs < -1)
inline std::pair<double, double> exponent_conditions(double tau, double D, double p, double q) {
  const double first = 1.0 - tau * p / 2.0 - p / q;
  const double second = -1.0 + tau * (1.0 - p / 2.0) - ((1.0 - tau - D) / 2.0) * (p - 1.0) + p / q;
  return {first, second};
}

inline constexpr double exponent_margin = 1e-9;

/// p = 2 and the smallest even q >= 2 meeting both conditions with margin
/// 1e-9; nullopt when tau >= 1 - D (or the gap is below the margin).
inline std::optional<Exponents> feasible_exponents(double tau, double D) {
  if (!(tau >= 0.0 && tau < 1.0) || !(D >= 0.0 && D < 1.0)) throw std::domain_error("tau and D must lie in [0,1)");
  if (!(tau < 1.0 - D)) return std::nullopt;
  const double p = 2.0;
  auto ok = [&](double q) {
    const auto [a, b] = exponent_conditions(tau, D, p, q);
    return a > exponent_margin && b < -1.0 - exponent_margin;
  };
  // At p = 2: q > 2/(1 - tau) and q > 4/(1 - tau - D); start just below the bound and walk up.
  const double bound = std::max(2.0 / (1.0 - tau), 4.0 / (1.0 - tau - D));
  if (!std::isfinite(bound) || bound > 1e12) return std::nullopt;
  double q = std::max(2.0, 2.0 * std::floor(bound / 2.0) - 2.0);
  while (!ok(q)) {
    q += 2.0;
    if (q > 2.0 * bound + 1e6) return std::nullopt;
  }
  return Exponents{p, q};
}

/// l_k^{p - tau p/2 - p/q} exp((p-1) s_k) (1 + log k), k = 1..K.
inline std::vector<double> series_bound_terms(const LengthSequence& seq, double tau, double p, double q, std::size_t K) {
  if (K == 0) throw std::invalid_argument("series_bound_terms needs K >= 1");
  const double power = p - tau * p / 2.0 - p / q;
  std::vector<double> out(K);
  double s = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double ell = seq(k);
    s += ell;
    out[k - 1] = std::exp(power * std::log(ell) + (p - 1.0) * s) * (1.0 + std::log(static_cast<double>(k)));
  }
  return out;
}

/// Share of the running total contributed by the last dyadic block (K/2, K].
inline double last_block_fraction(const std::vector<double>& terms) {
  if (terms.size() < 2) throw std::invalid_argument("last_block_fraction needs >= 2 terms");
  double total = 0.0, tail = 0.0;
  const std::size_t half = terms.size() / 2;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    total += terms[i];
    if (i >= half) tail += terms[i];
  }
  return tail / total;
}

}  // namespace dvcover
