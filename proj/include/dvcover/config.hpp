#pragma once

// Flat key=value experiment configuration. One setting per line, '#' starts a
// comment, blank lines are ignored. Command-line flags are applied on top of a
// file through the same apply_setting() so both paths share validation.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "chaos_measure.hpp"
#include "length_sequence.hpp"
#include "spectral.hpp"

namespace dvcover {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        key_(std::move(key)),
        line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites{"simulate", "spectrum", "prop32",   "prop31",
                                               "mass",     "vector",   "dimension", "classify"};
  return suites;
}

struct ExperimentConfig {
  std::string suite = "mass";
  std::string sequence = "alpha:0.5";
  std::vector<std::size_t> k{64};
  std::size_t horizon = 65536;  // K for sequence diagnostics
  std::uint64_t seed = 42;
  std::size_t seeds = 100;
  std::size_t samples = 10000;
  double tau = 0.3;
  double p = 2.0;
  std::optional<double> q;  // empty means "auto"
  int m_max = 6;
  double h = 0.0;  // 0 selects h_{k,1} per stage
  FirstDifference d1 = FirstDifference::M1;
  unsigned threads = 1;
  std::string out = "covlab-out";

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text, int line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    std::string kind = std::is_floating_point_v<T> ? "a number" : "a non-negative integer";
    throw ConfigError("key '" + std::string(key) + "' expects " + kind + ", got '" + std::string(text) + "'",
                      std::string(key), line);
  }
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(value)) throw ConfigError("key '" + std::string(key) + "' must be finite", std::string(key), line);
  return value;
}

inline std::vector<std::size_t> parse_stage_list(std::string_view key, std::string_view text, int line) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const auto v = parse_number<std::size_t>(key, piece, line);
    if (v == 0) throw ConfigError("key '" + std::string(key) + "' needs stages >= 1", std::string(key), line);
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Sets one key from its textual value. `line` is 0 for command-line flags.
inline void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw, int line = 0) {
  using detail::parse_number;
  const auto value = detail::trim(raw);
  const std::string k(key);
  auto bad = [&](const std::string& msg) { return ConfigError("key '" + k + "': " + msg, k, line); };

  if (key == "suite") {
    const std::string v(value);
    bool ok = false;
    for (const auto& s : known_suites()) ok = ok || s == v;
    if (!ok) throw bad("unknown suite '" + v + "'");
    c.suite = v;
  } else if (key == "sequence") {
    try {
      (void)LengthSequence::parse(std::string(value));
    } catch (const std::exception& e) {
      throw bad(e.what());
    }
    c.sequence = std::string(value);
  } else if (key == "k") {
    c.k = detail::parse_stage_list(key, value, line);
  } else if (key == "horizon") {
    c.horizon = parse_number<std::size_t>(key, value, line);
    if (c.horizon < 2) throw bad("must be >= 2");
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value, line);
  } else if (key == "seeds") {
    c.seeds = parse_number<std::size_t>(key, value, line);
    if (c.seeds == 0) throw bad("must be >= 1");
  } else if (key == "samples") {
    c.samples = parse_number<std::size_t>(key, value, line);
    if (c.samples == 0) throw bad("must be >= 1");
  } else if (key == "tau") {
    c.tau = parse_number<double>(key, value, line);
    if (!(c.tau >= 0.0 && c.tau < 1.0)) throw bad("must lie in [0,1)");
  } else if (key == "p") {
    c.p = parse_number<double>(key, value, line);
    if (!(c.p > 1.0 && c.p <= 2.0)) throw bad("must lie in (1,2]");
  } else if (key == "q") {
    if (value == "auto") {
      c.q.reset();
    } else {
      c.q = parse_number<double>(key, value, line);
      if (!(*c.q >= 2.0)) throw bad("must be >= 2 or 'auto'");
    }
  } else if (key == "m_max") {
    c.m_max = parse_number<int>(key, value, line);
    if (c.m_max < 1 || c.m_max > 20) throw bad("must lie in [1,20]");
  } else if (key == "h") {
    c.h = parse_number<double>(key, value, line);
    if (!(c.h >= 0.0 && c.h < 0.5)) throw bad("must lie in [0,1/2)");
  } else if (key == "d1") {
    if (value == "M1") c.d1 = FirstDifference::M1;
    else if (value == "M1_minus_1") c.d1 = FirstDifference::M1_minus_1;
    else throw bad("expects M1 or M1_minus_1");
  } else if (key == "threads") {
    c.threads = parse_number<unsigned>(key, value, line);
    if (c.threads == 0) throw bad("must be >= 1");
  } else if (key == "out") {
    if (value.empty()) throw bad("must not be empty");
    c.out = std::string(value);
  } else {
    throw ConfigError("unknown key '" + k + "'", k, line);
  }
}

inline ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {}) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(line) + "'", {}, line_no);
    apply_setting(base, detail::trim(line.substr(0, eq)), line.substr(eq + 1), line_no);
  }
  return base;
}

/// Reads a config file; a missing or unreadable file is an I/O failure, not a parse error.
inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(base));
}

/// Every key, one per line, in a fixed order; parse_config_text(serialize(c)) == c.
inline std::string serialize(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "suite=" << c.suite << '\n' << "sequence=" << c.sequence << '\n' << "k=";
  for (std::size_t i = 0; i < c.k.size(); ++i) o << (i ? "," : "") << c.k[i];
  o << '\n'
    << "horizon=" << c.horizon << '\n'
    << "seed=" << c.seed << '\n'
    << "seeds=" << c.seeds << '\n'
    << "samples=" << c.samples << '\n'
    << "tau=" << detail::format_real(c.tau) << '\n'
    << "p=" << detail::format_real(c.p) << '\n'
    << "q=" << (c.q ? detail::format_real(*c.q) : std::string("auto")) << '\n'
    << "m_max=" << c.m_max << '\n'
    << "h=" << detail::format_real(c.h) << '\n'
    << "d1=" << (c.d1 == FirstDifference::M1 ? "M1" : "M1_minus_1") << '\n'
    << "threads=" << c.threads << '\n'
    << "out=" << c.out << '\n';
  return o.str();
}

/// D estimate used for exponent selection: the tail max of s_k / log k at the
/// configured horizon, less its leading bias when that is known.
inline double corrected_D_estimate(const LengthSequence& seq, std::size_t K) {
  double d = estimate_D(seq, K);
  if (const auto bias = estimate_D_bias(seq, K)) d -= *bias;
  return std::max(0.0, d);
}

struct ResolvedExponents {
  double p = 2.0;
  double q = 2.0;
  double d_estimate = 0.0;  // after rounding, when q was resolved automatically
  bool automatic = false;
};

/// Fixed q passes through. "auto" rounds the D estimate up to the next multiple
/// of 0.05 and asks feasible_exponents for the smallest even q. Estimates within
/// 1e-4 above a multiple count as that multiple: the bias correction leaves an
/// O(1/(k log k)) residual.
inline ResolvedExponents resolve_exponents(const ExperimentConfig& c) {
  const auto seq = LengthSequence::parse(c.sequence);
  ResolvedExponents r;
  r.p = c.p;
  if (c.q) {
    r.q = *c.q;
    r.d_estimate = corrected_D_estimate(seq, c.horizon);
    return r;
  }
  r.automatic = true;
  const double raw = corrected_D_estimate(seq, c.horizon);
  r.d_estimate = std::ceil((raw - 1e-4) / 0.05) * 0.05;
  if (r.d_estimate >= 1.0) throw ConfigError("q=auto: estimated D " + detail::format_real(raw) + " leaves no feasible q", "q");
  const auto e = feasible_exponents(c.tau, r.d_estimate);
  if (!e) throw ConfigError("q=auto: tau=" + detail::format_real(c.tau) + " >= 1 - D (D ~ " + detail::format_real(r.d_estimate) + ")", "q");
  r.p = e->p;
  r.q = e->q;
  return r;
}

}  // namespace dvcover
