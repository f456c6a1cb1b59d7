#pragma once

// Random covering realizations: arcs I_k = [w_k, w_k + l_k) with w_k uniform
// on [0,1), their stage-k uncovered sets, and box-counting dimension proxies.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circle_set.hpp"
#include "counter_rng.hpp"
#include "length_sequence.hpp"
#include "stats.hpp"

namespace dvcover {

/// One sampled covering: left endpoints w_1..w_K and the lengths they carry.
///
/// w_k depends only on (seed, k), so prefixes of different K agree.
struct CoverRealization {
  std::vector<double> lengths;  // l_1..l_K
  std::vector<double> omegas;   // w_1..w_K
  std::uint64_t master_seed = 0;

  std::size_t stages() const noexcept { return omegas.size(); }

  /// The k-th arc (1-based) as a set.
  CircleArcSet arc(std::size_t k) const {
    check_stage(k);
    return CircleArcSet::from_arc(omegas[k - 1], lengths[k - 1]);
  }

  /// Same left endpoints, every length multiplied by lambda in (0,1].
  CoverRealization with_scaled_lengths(double lambda) const {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("length scale must lie in (0,1]");
    CoverRealization out = *this;
    for (auto& l : out.lengths) l *= lambda;
    return out;
  }

  void check_stage(std::size_t k) const {
    if (k == 0 || k > stages())
      throw std::out_of_range("stage " + std::to_string(k) + " outside 1.." + std::to_string(stages()));
  }
};

/// w_k = uniform01(seed, k).
inline double omega_at(std::uint64_t master_seed, std::size_t k) noexcept { return uniform01(master_seed, k); }

inline CoverRealization sample_realization(const LengthSequence& seq, std::size_t K, std::uint64_t master_seed) {
  if (K == 0) throw std::invalid_argument("sample_realization needs K >= 1");
  CoverRealization r;
  r.master_seed = master_seed;
  r.lengths = seq.prefix(K);
  r.omegas.resize(K);
  for (std::size_t k = 1; k <= K; ++k) r.omegas[k - 1] = omega_at(master_seed, k);
  return r;
}

/// Union of the first k arcs in one sort-and-merge sweep.
inline CircleArcSet covered_set(const CoverRealization& r, std::size_t k) {
  if (k == 0) return CircleArcSet::empty();
  r.check_stage(k);
  std::vector<Arc> pieces;
  pieces.reserve(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const double start = r.omegas[j];
    const double end = start + r.lengths[j];
    if (end <= 1.0) {
      pieces.push_back({start, end});
    } else {
      pieces.push_back({start, 1.0});
      pieces.push_back({0.0, end - 1.0});
    }
  }
  return CircleArcSet::from_pieces(std::move(pieces));
}

/// Points missed by I_1..I_k; k = 0 gives the whole circle.
inline CircleArcSet uncovered_set(const CoverRealization& r, std::size_t k) {
  return complement(covered_set(r, k));
}

/// Uncovered sets for stages 0..k, computed by successive removal of one arc.
inline std::vector<CircleArcSet> uncovered_sets_incremental(const CoverRealization& r, std::size_t k) {
  if (k > 0) r.check_stage(k);
  std::vector<CircleArcSet> out;
  out.reserve(k + 1);
  out.push_back(CircleArcSet::full());
  for (std::size_t j = 1; j <= k; ++j) out.push_back(difference(out.back(), r.arc(j)));
  return out;
}

/// prod_{j<=k} (1 - l_j), accumulated as a sum of logs.
inline double exact_uncovered_probability(const LengthSequence& seq, std::size_t k) {
  double log_p = 0.0;
  for (std::size_t j = 1; j <= k; ++j) log_p += std::log1p(-seq(j));
  return std::exp(log_p);
}

struct BoxDimensionEstimate {
  double slope = 0.0;
  double r2 = 0.0;
  int j_min = 0;
  int j_max = 0;
  std::vector<std::int64_t> counts;  // j = j_min..j_max
};

/// Default scale window [4, min(10, floor(log2(1/l_k)))].
inline std::pair<int, int> default_box_window(double ell_k) {
  const int upper = static_cast<int>(std::floor(std::log2(1.0 / ell_k)));
  return {4, std::min(10, upper)};
}

/// Least-squares slope of log2 N_j against j for an explicit set.
inline BoxDimensionEstimate box_dimension_of(const CircleArcSet& set, int j_min, int j_max) {
  if (!(j_min < j_max) || j_min < 0 || j_max > 30) throw std::invalid_argument("box window needs 0 <= j_min < j_max <= 30");
  BoxDimensionEstimate est;
  est.j_min = j_min;
  est.j_max = j_max;
  std::vector<double> xs, ys;
  for (int j = j_min; j <= j_max; ++j) {
    const auto n = set.box_count(j);
    if (n == 0) throw std::domain_error("uncovered set is empty at scale 2^-" + std::to_string(j));
    est.counts.push_back(n);
    xs.push_back(j);
    ys.push_back(std::log2(static_cast<double>(n)));
  }
  const auto fit = stats::fit_line(xs, ys);
  est.slope = fit.slope;
  est.r2 = fit.r2;
  return est;
}

inline BoxDimensionEstimate box_dimension_estimate(const CoverRealization& r, std::size_t k, int j_min, int j_max) {
  return box_dimension_of(uncovered_set(r, k), j_min, j_max);
}

}  // namespace dvcover
