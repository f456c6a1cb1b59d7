#pragma once

// Arc-length sequences l_1 >= l_2 >= ... in (0,1) and the scalar diagnostics
// built from their partial sums s_k = l_1 + ... + l_k.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

namespace dvcover {

/// Thrown when sequence parameters leave the admissible domain.
class ParameterDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double euler_gamma = 0.57721566490153286061;

namespace detail {

inline double log_add_exp(double a, double b) noexcept {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

inline std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

enum class SequenceKind { alpha_over_k, shifted_alpha, critical_tan, explicit_list };

/// Non-increasing arc lengths in (0,1), indexed from k = 1.
///
/// Formula kinds are evaluated on demand (pure, so repeated generation is
/// idempotent); explicit lists are validated once at construction and are
/// finite, so asking past their end is an error.
class LengthSequence {
 public:
  /// l_k = alpha / k. Requires 0 < alpha < 1.
  static LengthSequence alpha_over_k(double alpha) { return shifted_alpha(alpha, 0.0); }

  /// l_k = alpha / (k + offset). Requires alpha > 0, offset >= 0, alpha < 1 + offset.
  static LengthSequence shifted_alpha(double alpha, double offset) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw ParameterDomainError("alpha must be a positive finite real, got " + detail::format_real(alpha));
    if (!(offset >= 0.0) || !std::isfinite(offset))
      throw ParameterDomainError("offset must be >= 0, got " + detail::format_real(offset));
    if (!(alpha < 1.0 + offset))
      throw ParameterDomainError("alpha / (1 + offset) must be < 1 so that l_1 < 1");
    LengthSequence s;
    s.kind_ = offset == 0.0 ? SequenceKind::alpha_over_k : SequenceKind::shifted_alpha;
    s.alpha_ = alpha;
    s.offset_ = offset;
    return s;
  }

  /// l_k = (1 - 1/sqrt(log(k+10))) / (k+10): the critical (D = 1) example
  /// that still satisfies Tan's condition.
  static LengthSequence critical_tan() {
    LengthSequence s;
    s.kind_ = SequenceKind::critical_tan;
    s.offset_ = 10.0;
    return s;
  }

  static LengthSequence explicit_values(std::vector<double> values) {
    if (values.empty()) throw ParameterDomainError("explicit sequence must be non-empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = values[i];
      if (!(v > 0.0 && v < 1.0))
        throw ParameterDomainError("l_" + std::to_string(i + 1) + " = " + detail::format_real(v) +
                                   " is outside (0,1)");
      if (i > 0 && v > values[i - 1])
        throw ParameterDomainError("explicit sequence is not non-increasing at k = " + std::to_string(i + 1));
    }
    LengthSequence s;
    s.kind_ = SequenceKind::explicit_list;
    s.values_ = std::move(values);
    return s;
  }

  /// Parses "alpha:0.5", "alpha:0.5:offset=10", "critical-tan",
  /// "file:<path>" (one decimal per line) or "list:0.5,0.25".
  static LengthSequence parse(const std::string& text) {
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("bad sequence '" + text + "': " + why);
    };
    auto to_real = [&](const std::string& token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw fail("'" + token + "' is not a number");
      }
      if (used != token.size()) throw fail("'" + token + "' is not a number");
      return v;
    };

    if (text == "critical-tan") return critical_tan();
    if (text.rfind("alpha:", 0) == 0) {
      const std::string rest = text.substr(6);
      const auto colon = rest.find(':');
      if (colon == std::string::npos) {
        // alpha >= 1 without an offset gets the smallest integer offset keeping l_1 < 1.
        const double alpha = to_real(rest);
        if (alpha >= 1.0) return shifted_alpha(alpha, std::floor(alpha));
        return alpha_over_k(alpha);
      }
      const std::string tail = rest.substr(colon + 1);
      if (tail.rfind("offset=", 0) != 0) throw fail("expected 'offset=<c>' after alpha");
      return shifted_alpha(to_real(rest.substr(0, colon)), to_real(tail.substr(7)));
    }
    if (text.rfind("list:", 0) == 0) {
      std::vector<double> vals;
      std::stringstream ss(text.substr(5));
      std::string item;
      while (std::getline(ss, item, ',')) vals.push_back(to_real(item));
      auto s = explicit_values(std::move(vals));
      s.source_ = text;
      return s;
    }
    if (text.rfind("file:", 0) == 0) {
      const std::string path = text.substr(5);
      std::ifstream in(path);
      if (!in) throw fail("cannot open '" + path + "'");
      std::vector<double> vals;
      std::string line;
      while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        vals.push_back(to_real(line.substr(first, last - first + 1)));
      }
      auto s = explicit_values(std::move(vals));
      s.source_ = text;
      return s;
    }
    throw fail("unknown sequence kind");
  }

  /// Canonical text form; parse(to_string()) reproduces the sequence.
  std::string to_string() const {
    switch (kind_) {
      case SequenceKind::alpha_over_k:
        return "alpha:" + detail::format_real(alpha_);
      case SequenceKind::shifted_alpha:
        return "alpha:" + detail::format_real(alpha_) + ":offset=" + detail::format_real(offset_);
      case SequenceKind::critical_tan:
        return "critical-tan";
      case SequenceKind::explicit_list: {
        if (!source_.empty()) return source_;
        std::string out = "list:";
        for (std::size_t i = 0; i < values_.size(); ++i) {
          if (i) out += ',';
          out += detail::format_real(values_[i]);
        }
        return out;
      }
    }
    return {};
  }

  SequenceKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double offset() const noexcept { return offset_; }

  /// Largest addressable index (infinite for formula kinds).
  std::size_t max_index() const noexcept {
    return kind_ == SequenceKind::explicit_list ? values_.size() : std::numeric_limits<std::size_t>::max();
  }

  /// l_k for k >= 1.
  double operator()(std::size_t k) const {
    if (k == 0) throw std::out_of_range("sequence index starts at 1");
    switch (kind_) {
      case SequenceKind::alpha_over_k:
      case SequenceKind::shifted_alpha:
        return alpha_ / (static_cast<double>(k) + offset_);
      case SequenceKind::critical_tan: {
        const double x = static_cast<double>(k) + offset_;
        return (1.0 - 1.0 / std::sqrt(std::log(x))) / x;
      }
      case SequenceKind::explicit_list:
        if (k > values_.size())
          throw std::out_of_range("explicit sequence has " + std::to_string(values_.size()) +
                                  " terms, requested l_" + std::to_string(k));
        return values_[k - 1];
    }
    return 0.0;
  }

  /// l_1..l_K (index 0 holds l_1).
  std::vector<double> prefix(std::size_t K) const {
    std::vector<double> out(K);
    for (std::size_t k = 1; k <= K; ++k) out[k - 1] = (*this)(k);
    return out;
  }

 private:
  LengthSequence() = default;

  SequenceKind kind_ = SequenceKind::alpha_over_k;
  double alpha_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> values_;
  std::string source_;
};

/// Running sums s_1..s_K.
inline std::vector<double> partial_sums(const LengthSequence& seq, std::size_t K) {
  if (K == 0) throw std::invalid_argument("partial_sums needs K >= 1");
  std::vector<double> s(K);
  double acc = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    acc += seq(k);
    s[k - 1] = acc;
  }
  return s;
}

/// Per-index data behind Shepp's series, Kahane's D and Tan's condition.
struct SequenceDiagnostics {
  std::vector<double> partial_sums;  // s_k
  std::vector<double> shepp_terms;   // k^-2 exp(s_k); may be +inf when s_k is huge
  double d_estimate = 0.0;
  std::vector<double> tan_partial;   // sum_{j<=k} (l_j - l_{j+1}) exp(s_j)
};

enum class SheppLabel { likely_divergent, likely_convergent, inconclusive };

inline const char* to_string(SheppLabel label) noexcept {
  switch (label) {
    case SheppLabel::likely_divergent: return "likely_divergent";
    case SheppLabel::likely_convergent: return "likely_convergent";
    case SheppLabel::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SheppClassification {
  SheppLabel label = SheppLabel::inconclusive;
  /// log of sum_{k in [2^j, 2^{j+1})} k^-2 exp(s_k), one entry per complete dyadic block.
  std::vector<double> log_block_sums;
  /// log of the running Shepp partial sums, k = 1..K.
  std::vector<double> log_partial_sums;
};

/// log(k^-2 exp(s_k)) for k = 1..K.
inline std::vector<double> shepp_log_terms(const LengthSequence& seq, std::size_t K) {
  const auto s = partial_sums(seq, K);
  std::vector<double> out(K);
  for (std::size_t k = 1; k <= K; ++k) out[k - 1] = s[k - 1] - 2.0 * std::log(static_cast<double>(k));
  return out;
}

/// log of sum_{k=first}^{last} k^-2 exp(s_k) (inclusive range, 1-based).
inline double shepp_log_window_sum(const LengthSequence& seq, std::size_t first, std::size_t last) {
  if (first == 0 || last < first) throw std::invalid_argument("shepp window must satisfy 1 <= first <= last");
  const auto terms = shepp_log_terms(seq, last);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t k = first; k <= last; ++k) acc = detail::log_add_exp(acc, terms[k - 1]);
  return acc;
}

/// Three-way heuristic reading of Shepp's series over dyadic blocks.
///
/// likely_divergent when the last complete block exceeds growth_threshold times
/// the first; likely_convergent when the last three blocks shrink strictly;
/// inconclusive otherwise, including K < 64.
inline SheppClassification classify_shepp(const LengthSequence& seq, std::size_t K, double growth_threshold = 1.5) {
  SheppClassification out;
  if (K == 0) return out;
  const auto terms = shepp_log_terms(seq, K);
  out.log_partial_sums.resize(K);
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    run = detail::log_add_exp(run, terms[k]);
    out.log_partial_sums[k] = run;
  }
  for (std::size_t lo = 1; 2 * lo - 1 <= K; lo *= 2) {
    double acc = -std::numeric_limits<double>::infinity();
    for (std::size_t k = lo; k < 2 * lo; ++k) acc = detail::log_add_exp(acc, terms[k - 1]);
    out.log_block_sums.push_back(acc);
  }
  if (K < 64) return out;

  const auto& b = out.log_block_sums;
  const std::size_t n = b.size();
  if (b.back() - b.front() > std::log(growth_threshold)) {
    out.label = SheppLabel::likely_divergent;
  } else if (n >= 3 && b[n - 1] < b[n - 2] && b[n - 2] < b[n - 3]) {
    out.label = SheppLabel::likely_convergent;
  }
  return out;
}

/// max_{k in [ceil(f K), K]} s_k / log k: a finite-K stand-in for the limsup
/// defining D. For l_k = alpha/k it overshoots by about alpha*gamma/log(K/2).
inline double estimate_D(const LengthSequence& seq, std::size_t K, double tail_fraction = 0.5) {
  if (K < 2) throw std::invalid_argument("estimate_D needs K >= 2");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw std::invalid_argument("tail_fraction must lie in (0,1)");
  const auto s = partial_sums(seq, K);
  auto first = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(K)));
  first = std::max<std::size_t>(first, 2);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = first; k <= K; ++k) best = std::max(best, s[k - 1] / std::log(static_cast<double>(k)));
  return best;
}

/// Leading bias of estimate_D for the alpha kinds. s_k = alpha (log k - digamma(1 + c)) + o(1), so
/// s_k / log k - alpha = b / log k with b = -alpha digamma(1 + c); the tail max sits at the first
/// tail index when b > 0 and at K otherwise.
inline std::optional<double> estimate_D_bias(const LengthSequence& seq, std::size_t K, double tail_fraction = 0.5) {
  if (seq.kind() != SequenceKind::alpha_over_k && seq.kind() != SequenceKind::shifted_alpha) return std::nullopt;
  const double psi = seq.offset() == 0.0 ? -euler_gamma : boost::math::digamma(1.0 + seq.offset());
  const double b = -seq.alpha() * psi;
  const auto first = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(K))), 2);
  return b / std::log(static_cast<double>(b > 0.0 ? first : K));
}

/// T_k = sum_{j<=k} (l_j - l_{j+1}) exp(s_j), k = 1..K, accumulated in log space.
/// Needs l_{K+1}.
inline std::vector<double> tan_partial_sums(const LengthSequence& seq, std::size_t K) {
  if (K < 1) throw std::invalid_argument("tan_partial_sums needs K >= 1");
  const auto ell = seq.prefix(K + 1);
  std::vector<double> out(K);
  double s = 0.0;
  double log_total = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    s += ell[k];
    const double gap = ell[k] - ell[k + 1];
    if (gap > 0.0) log_total = detail::log_add_exp(log_total, std::log(gap) + s);
    out[k] = std::exp(log_total);
  }
  return out;
}

inline SequenceDiagnostics diagnose(const LengthSequence& seq, std::size_t K, double tail_fraction = 0.5) {
  SequenceDiagnostics d;
  d.partial_sums = partial_sums(seq, K);
  d.shepp_terms.resize(K);
  for (std::size_t k = 1; k <= K; ++k)
    d.shepp_terms[k - 1] = std::exp(d.partial_sums[k - 1] - 2.0 * std::log(static_cast<double>(k)));
  d.d_estimate = K >= 2 ? estimate_D(seq, K, tail_fraction) : 0.0;
  if (K + 1 <= seq.max_index()) d.tan_partial = tan_partial_sums(seq, K);
  return d;
}

}  // namespace dvcover
