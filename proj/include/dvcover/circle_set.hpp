#pragma once

// Finite unions of arcs on the circle T = R/Z with exact set algebra.
//
// Arcs are half-open [a, b). The covering arcs of the model are open, but the
// two conventions differ on a null set only, so every measure, integral and
// Fourier coefficient computed from them is identical. An arc that crosses 0
// is stored as two pieces [a, 1) and [0, b), so no stored arc wraps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dvcover {

/// Half-open interval [lo, hi) inside [0, 1].
struct Arc {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Endpoints closer than this are merged.
inline constexpr double endpoint_tolerance = 1e-12;

/// Reduces x to [0, 1).
inline double wrap_unit(double x) noexcept {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // floor rounding on tiny negative inputs
  return r;
}

class CircleArcSet {
 public:
  CircleArcSet() = default;

  static CircleArcSet empty() { return {}; }

  static CircleArcSet full() {
    CircleArcSet s;
    s.arcs_.push_back({0.0, 1.0});
    return s;
  }

  /// The arc [start, start + length) mod 1, 0 < length < 1.
  static CircleArcSet from_arc(double start, double length) {
    if (!(length > 0.0 && length < 1.0)) throw std::domain_error("arc length must lie in (0,1)");
    return CircleArcSet(arc_pieces(wrap_unit(start), length));
  }

  /// Builds a canonical set from arbitrary (possibly overlapping, unsorted) pieces in [0,1].
  static CircleArcSet from_pieces(std::vector<Arc> pieces) { return CircleArcSet(std::move(pieces)); }

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool is_empty() const noexcept { return arcs_.empty(); }

  double measure() const noexcept {
    double total = 0.0;
    for (const auto& a : arcs_) total += a.length();
    return total;
  }

  bool contains(double t) const noexcept {
    t = wrap_unit(t);
    auto it = std::upper_bound(arcs_.begin(), arcs_.end(), t, [](double v, const Arc& a) { return v < a.lo; });
    if (it == arcs_.begin()) return false;
    --it;
    return t < it->hi;
  }

  /// {x + h mod 1 : x in this set}.
  CircleArcSet shifted(double h) const {
    if (arcs_.size() == 1 && arcs_.front().lo == 0.0 && arcs_.front().hi == 1.0) return *this;
    std::vector<Arc> pieces;
    pieces.reserve(arcs_.size() + 1);
    for (const auto& a : arcs_) {
      const double len = a.length();
      const double start = wrap_unit(a.lo + h);
      if (start + len <= 1.0) {
        pieces.push_back({start, start + len});
      } else {
        pieces.push_back({start, 1.0});
        pieces.push_back({0.0, start + len - 1.0});
      }
    }
    return CircleArcSet(std::move(pieces));
  }

  /// Counts dyadic boxes [i 2^-j, (i+1) 2^-j) meeting this set in positive measure.
  std::int64_t box_count(int j) const {
    if (j < 0 || j > 30) throw std::out_of_range("box_count scale exponent must lie in [0, 30]");
    const double scale = std::ldexp(1.0, j);
    std::int64_t count = 0;
    std::int64_t last_box = -1;
    for (const auto& a : arcs_) {
      if (!(a.hi > a.lo)) continue;
      auto first = static_cast<std::int64_t>(std::floor(a.lo * scale));
      const auto last = static_cast<std::int64_t>(std::ceil(a.hi * scale)) - 1;
      first = std::max(first, last_box + 1);
      if (last >= first) {
        count += last - first + 1;
        last_box = last;
      }
    }
    return count;
  }

  friend bool operator==(const CircleArcSet&, const CircleArcSet&) = default;

 private:
  explicit CircleArcSet(std::vector<Arc> pieces) : arcs_(normalize(std::move(pieces))) {}

  static std::vector<Arc> arc_pieces(double start, double length) {
    if (start + length <= 1.0) return {{start, start + length}};
    return {{start, 1.0}, {0.0, start + length - 1.0}};
  }

  static std::vector<Arc> normalize(std::vector<Arc> pieces) {
    for (auto& p : pieces) {
      p.lo = std::clamp(p.lo, 0.0, 1.0);
      p.hi = std::clamp(p.hi, 0.0, 1.0);
      if (p.lo <= endpoint_tolerance) p.lo = 0.0;
      if (p.hi >= 1.0 - endpoint_tolerance) p.hi = 1.0;
    }
    std::erase_if(pieces, [](const Arc& p) { return !(p.hi - p.lo > endpoint_tolerance); });
    std::sort(pieces.begin(), pieces.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
    std::vector<Arc> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces) {
      if (!out.empty() && p.lo <= out.back().hi + endpoint_tolerance) {
        out.back().hi = std::max(out.back().hi, p.hi);
      } else {
        out.push_back(p);
      }
    }
    return out;
  }

  std::vector<Arc> arcs_;
};

inline CircleArcSet unite(const CircleArcSet& a, const CircleArcSet& b) {
  std::vector<Arc> pieces(a.arcs());
  pieces.insert(pieces.end(), b.arcs().begin(), b.arcs().end());
  return CircleArcSet::from_pieces(std::move(pieces));
}

inline CircleArcSet complement(const CircleArcSet& a) {
  std::vector<Arc> gaps;
  double cursor = 0.0;
  for (const auto& arc : a.arcs()) {
    if (arc.lo > cursor) gaps.push_back({cursor, arc.lo});
    cursor = std::max(cursor, arc.hi);
  }
  if (cursor < 1.0) gaps.push_back({cursor, 1.0});
  return CircleArcSet::from_pieces(std::move(gaps));
}

/// Two-pointer sweep over both sorted arc lists.
inline CircleArcSet intersect(const CircleArcSet& a, const CircleArcSet& b) {
  const auto& x = a.arcs();
  const auto& y = b.arcs();
  std::vector<Arc> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) ++i; else ++j;
  }
  return CircleArcSet::from_pieces(std::move(out));
}

/// a \ b
inline CircleArcSet difference(const CircleArcSet& a, const CircleArcSet& b) { return intersect(a, complement(b)); }

inline CircleArcSet shift(const CircleArcSet& a, double h) { return a.shifted(h); }

inline double measure(const CircleArcSet& a) noexcept { return a.measure(); }

inline double symmetric_difference_measure(const CircleArcSet& a, const CircleArcSet& b) {
  return a.measure() + b.measure() - 2.0 * intersect(a, b).measure();
}

/// True when every arc of `inner` lies inside one arc of `outer`, endpoints compared with slack `tol`.
inline bool is_subset(const CircleArcSet& inner, const CircleArcSet& outer, double tol = 0.0) {
  const auto& o = outer.arcs();
  std::size_t j = 0;
  for (const auto& arc : inner.arcs()) {
    while (j < o.size() && o[j].hi + tol < arc.hi) ++j;
    if (j == o.size()) return false;
    if (o[j].lo > arc.lo + tol) return false;
  }
  return true;
}

/// Endpoint-wise comparison with slack `tol`.
inline bool approx_equal(const CircleArcSet& a, const CircleArcSet& b, double tol = endpoint_tolerance) {
  if (a.arcs().size() != b.arcs().size()) return false;
  for (std::size_t i = 0; i < a.arcs().size(); ++i) {
    if (std::abs(a.arcs()[i].lo - b.arcs()[i].lo) > tol) return false;
    if (std::abs(a.arcs()[i].hi - b.arcs()[i].hi) > tol) return false;
  }
  return true;
}

inline std::int64_t box_count(const CircleArcSet& a, int j) { return a.box_count(j); }

}  // namespace dvcover
