#pragma once

// Experiment suites behind the covlab command line. Each suite writes its CSV
// and JSON artifacts plus summary.json and manifest.json into the output
// directory. Every byte except the manifest timestamp is a function of the
// configuration.
//
// Requires nlohmann/json and OpenSSL's libcrypto (SHA-256 checksums).

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "covering.hpp"
#include "moments.hpp"
#include "parallel.hpp"
#include "spectral.hpp"
#include "version.hpp"

namespace dvcover {

enum ExitCode : int { exit_ok = 0, exit_criterion_failed = 1, exit_config_error = 2, exit_io_error = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::vector<Criterion> criteria;
  std::vector<std::string> artifacts;  // file names inside the output directory, in write order
  bool all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
  }
};

/// CSV layouts, as printed by `covlab --help`.
inline const char* csv_schemas() {
  return "simulate.csv         seed,k,uncovered_measure,box_count_j4,...,box_count_j10\n"
         "spectrum.csv         seed,k,n,re,im,abs2\n"
         "spectrum_blocks.csv  seed,k,m,first,last,shift,sup_abs2,l1_modulus\n"
         "verify.csv           quantity,k,p,h,t,mc_estimate,mc_stderr,closed_form_or_bound,relation,ratio,samples,"
         "master_seed,pass\n"
         "dimension.csv        j,first,last,center,median_sup2\n"
         "classify.csv         block,first,last,log_block_sum\n"
         "seed columns hold the replica seed replica_seed(master, r), r = 0..seeds-1.\n";
}

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read back " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 initialisation failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

/// Opens `name` in the output directory, hands the stream to `body`, and records the artifact.
inline void write_artifact(const std::filesystem::path& dir, const std::string& name, SuiteResult& result,
                           const std::function<void(std::ostream&)>& body) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
  result.artifacts.push_back(name);
}

inline void write_json(const std::filesystem::path& dir, const std::string& name, SuiteResult& result,
                       const ordered_json& j) {
  write_artifact(dir, name, result, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

inline std::string num(double x) { return format_real(x); }

inline Criterion criterion(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

/// h for stage k: the configured value, or h_{k,1} = l_k / 4.
inline double shift_for(const ExperimentConfig& c, const LengthSequence& seq, std::size_t k) {
  return c.h > 0.0 ? c.h : build_blocks(seq(k), 1).blocks[1].shift;
}

inline std::size_t max_stage(const ExperimentConfig& c) { return *std::max_element(c.k.begin(), c.k.end()); }

// ---------------------------------------------------------------- simulate

inline void run_simulate(const ExperimentConfig& c, const std::filesystem::path& dir, SuiteResult& res) {
  const auto seq = LengthSequence::parse(c.sequence);
  const std::size_t K = max_stage(c);
  constexpr int j_lo = 4, j_hi = 10;
  struct Row {
    double measure;
    std::array<std::size_t, j_hi - j_lo + 1> boxes;
  };
  std::vector<std::vector<Row>> rows(c.seeds);
  parallel_for(c.seeds, c.threads, [&](std::size_t r) {
    const auto sets = uncovered_sets_incremental(sample_realization(seq, K, replica_seed(c.seed, r)), K);
    for (std::size_t k : c.k) {
      Row row{sets[k].measure(), {}};
      for (int j = j_lo; j <= j_hi; ++j) row.boxes[j - j_lo] = sets[k].box_count(j);
      rows[r].push_back(row);
    }
  });
  write_artifact(dir, "simulate.csv", res, [&](std::ostream& o) {
    o << "seed,k,uncovered_measure";
    for (int j = j_lo; j <= j_hi; ++j) o << ",box_count_j" << j;
    o << '\n';
    for (std::size_t r = 0; r < c.seeds; ++r)
      for (std::size_t i = 0; i < c.k.size(); ++i) {
        o << replica_seed(c.seed, r) << ',' << c.k[i] << ',' << num(rows[r][i].measure);
        for (auto b : rows[r][i].boxes) o << ',' << b;
        o << '\n';
      }
  });
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    std::vector<double> m;
    for (const auto& per_seed : rows) m.push_back(per_seed[i].measure);
    const auto s = stats::summarize(m);
    const double expected = exact_uncovered_probability(seq, c.k[i]);
    const bool pass = s.stderr_of_mean > 0.0 ? std::abs(s.mean - expected) <= 3.0 * s.stderr_of_mean
                                             : std::abs(s.mean - expected) <= 1e-12;
    res.criteria.push_back(criterion("uncovered_mean_k" + std::to_string(c.k[i]), pass,
                                     "mean " + num(s.mean) + " vs " + num(expected) + " (se " + num(s.stderr_of_mean) + ")"));
  }
}

// ---------------------------------------------------------------- spectrum

inline void run_spectrum(const ExperimentConfig& c, const std::filesystem::path& dir, SuiteResult& res) {
  const auto seq = LengthSequence::parse(c.sequence);
  const std::size_t K = max_stage(c);
  struct Stage {
    std::vector<std::complex<double>> coeffs;
    std::vector<double> sup2, modulus;
  };
  std::vector<std::vector<Stage>> data(c.seeds);
  std::vector<DyadicBlocks> blocks;
  for (std::size_t k : c.k) blocks.push_back(build_blocks(seq(k), c.m_max));

  parallel_for(c.seeds, c.threads, [&](std::size_t r) {
    const auto real = sample_realization(seq, K, replica_seed(c.seed, r));
    for (std::size_t i = 0; i < c.k.size(); ++i) {
      const auto mu = density_Mk(real, c.k[i]);
      Stage st;
      st.coeffs = fourier_coefficients(mu, 1, blocks[i].end() - 1);
      for (const auto& b : blocks[i].blocks) {
        double sup = 0.0;
        for (std::int64_t n = b.first; n < b.last; ++n) sup = std::max(sup, std::norm(st.coeffs[n - 1]));
        st.sup2.push_back(sup);
        st.modulus.push_back(b.m == 0 ? 0.0 : l1_modulus(mu, b.shift));
      }
      data[r].push_back(std::move(st));
    }
  });

  write_artifact(dir, "spectrum.csv", res, [&](std::ostream& o) {
    o << "seed,k,n,re,im,abs2\n";
    for (std::size_t r = 0; r < c.seeds; ++r)
      for (std::size_t i = 0; i < c.k.size(); ++i) {
        const auto s = replica_seed(c.seed, r);
        const auto& co = data[r][i].coeffs;
        for (std::size_t n = 1; n <= co.size(); ++n)
          o << s << ',' << c.k[i] << ',' << n << ',' << num(co[n - 1].real()) << ',' << num(co[n - 1].imag()) << ','
            << num(std::norm(co[n - 1])) << '\n';
      }
  });
  write_artifact(dir, "spectrum_blocks.csv", res, [&](std::ostream& o) {
    o << "seed,k,m,first,last,shift,sup_abs2,l1_modulus\n";
    for (std::size_t r = 0; r < c.seeds; ++r)
      for (std::size_t i = 0; i < c.k.size(); ++i)
        for (std::size_t m = 0; m < blocks[i].blocks.size(); ++m) {
          const auto& b = blocks[i].blocks[m];
          o << replica_seed(c.seed, r) << ',' << c.k[i] << ',' << b.m << ',' << b.first << ',' << b.last << ','
            << num(b.shift) << ',' << num(data[r][i].sup2[m]) << ',' << num(data[r][i].modulus[m]) << '\n';
        }
  });
  // Every block with m >= 1 lies in Delta(h_{k,m}), so its sup is bounded by the L1 modulus.
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    std::size_t violations = 0;
    double worst = 0.0;
    for (const auto& per_seed : data)
      for (std::size_t m = 1; m < per_seed[i].sup2.size(); ++m) {
        const double sup = std::sqrt(per_seed[i].sup2[m]);
        const double lim = per_seed[i].modulus[m];
        if (sup > lim * (1.0 + 1e-12) + 1e-15) ++violations;
        if (lim > 0.0) worst = std::max(worst, sup / lim);
      }
    res.criteria.push_back(criterion("block_sup_below_modulus_k" + std::to_string(c.k[i]), violations == 0,
                                     std::to_string(violations) + " violations, max sup/modulus " + num(worst)));
  }
}

// ---------------------------------------------------------------- verify

inline void add_report_criteria(const std::vector<MomentReport>& reports, SuiteResult& res) {
  for (const auto& r : reports)
    res.criteria.push_back(criterion(r.quantity + "_k" + std::to_string(r.k), r.passes(),
                                     "mc " + num(r.mc_estimate) + " +- " + num(r.mc_stderr) + " " +
                                         to_string(r.relation) + " " + num(r.closed_form_or_bound)));
}

inline void add_trend_criterion(const std::string& name, const std::vector<MomentReport>& reports, SuiteResult& res) {
  if (reports.size() < 3) return;
  const auto t = trend_of(reports);
  std::string ratios;
  for (double x : t.ratios) ratios += (ratios.empty() ? "" : " ") + num(x);
  res.criteria.push_back(criterion(name, t.passes(), "ratios [" + ratios + "], one-sided p " + num(t.p_value)));
}

inline void run_verify(const ExperimentConfig& c, const std::filesystem::path& dir, SuiteResult& res) {
  const auto seq = LengthSequence::parse(c.sequence);
  std::vector<MomentReport> reports;
  if (c.suite == "prop32") {
    for (std::size_t k : c.k) {
      reports.push_back(verify_identity_Xk_moment(seq, k, c.p, c.samples, c.seed, 0.0, c.threads));
      reports.push_back(verify_identity_Mk_moment(seq, k, c.p, c.samples, c.seed, 0.0, c.threads));
      reports.push_back(verify_bound_Mk_increment(seq, k, c.p, shift_for(c, seq, k), c.samples, c.seed, 0.0, c.threads));
    }
    add_report_criteria(reports, res);
  } else if (c.suite == "prop31") {
    std::vector<MomentReport> mod, norm;
    for (std::size_t k : c.k) {
      const auto r = verify_prop31(seq, k, c.p, shift_for(c, seq, k), c.samples, c.seed, c.d1, c.threads);
      mod.push_back(r.modulus);
      norm.push_back(r.norm);
      reports.push_back(r.modulus);
      reports.push_back(r.norm);
    }
    add_trend_criterion("Dk_l1_modulus_trend", mod, res);
    add_trend_criterion("Dk_l1_norm_trend", norm, res);
  } else if (c.suite == "mass") {
    for (std::size_t k : c.k) reports.push_back(martingale_mass_check(seq, k, c.samples, c.seed, c.threads));
    add_report_criteria(reports, res);
  } else {  // vector
    const auto e = resolve_exponents(c);
    for (std::size_t k : c.k) {
      const auto N = static_cast<std::int64_t>(std::floor(std::ldexp(1.0, c.m_max) / seq(k)));
      reports.push_back(estimate_Dk_vector_norm(seq, c.tau, e.p, e.q, k, N, c.samples, c.seed, c.d1, c.threads));
    }
    add_trend_criterion("Dk_vector_norm_trend", reports, res);
  }
  write_artifact(dir, "verify.csv", res, [&](std::ostream& o) {
    o << "quantity,k,p,h,t,mc_estimate,mc_stderr,closed_form_or_bound,relation,ratio,samples,master_seed,pass\n";
    for (const auto& r : reports)
      o << r.quantity << ',' << r.k << ',' << num(r.p) << ',' << num(r.h) << ',' << num(r.t) << ','
        << num(r.mc_estimate) << ',' << num(r.mc_stderr) << ',' << num(r.closed_form_or_bound) << ','
        << to_string(r.relation) << ',' << num(r.ratio()) << ',' << r.samples << ',' << r.master_seed << ','
        << (r.passes() ? "true" : "false") << '\n';
  });
}

// ---------------------------------------------------------------- dimension

struct DimensionResult {
  std::optional<DecayFit> fit;  // empty when a block median is zero
  std::vector<double> median_sup2;
  std::vector<FrequencyBlock> blocks;
  double d_estimate = 0.0;
  double predicted = 0.0;
  double box_median = 0.0;
  std::size_t box_members = 0;
};

/// Octave blocks [2^j, 2^{j+1}) from j = 2 up to the last one ending at or below 1/l_k.
inline std::vector<FrequencyBlock> dimension_blocks(double ell_k) {
  const int top = static_cast<int>(std::floor(std::log2(1.0 / ell_k))) - 1;
  if (top < 5) throw std::domain_error("stage too small for a decay fit: need 1/l_k >= 64");
  return octave_blocks(2, top);
}

/// Decay exponent and box-dimension median of the stage-k measures over `seeds`
/// replicas; the prediction for both is 1 - D.
inline DimensionResult measure_dimension(const LengthSequence& seq, std::size_t k, std::size_t seeds,
                                         std::uint64_t master, std::size_t horizon, unsigned threads) {
  DimensionResult out;
  out.blocks = dimension_blocks(seq(k));
  const auto window = default_box_window(seq(k));
  std::vector<SpectrumReport> ensemble(seeds);
  std::vector<double> slopes(seeds, std::nan(""));
  parallel_for(seeds, threads, [&](std::size_t r) {
    const auto s = replica_seed(master, r);
    const auto real = sample_realization(seq, k, s);
    const auto mu = density_Mk(real, k);
    ensemble[r] = spectrum_report(mu, out.blocks, s, k);
    const auto u = uncovered_set(real, k);
    if (u.box_count(window.second) > 0) slopes[r] = box_dimension_of(u, window.first, window.second).slope;
  });
  std::vector<double> finite;
  for (double x : slopes)
    if (!std::isnan(x)) finite.push_back(x);
  out.box_members = finite.size();
  out.box_median = finite.empty() ? std::nan("") : stats::median(finite);
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    std::vector<double> v;
    for (const auto& r : ensemble) v.push_back(r.block_sup2[b]);
    out.median_sup2.push_back(stats::median(std::move(v)));
  }
  try {
    out.fit = decay_exponent(ensemble, 0, out.blocks.size() - 1, std::min<std::size_t>(20, seeds));
  } catch (const std::domain_error&) {
    // most stage-k sets are empty; reported as a failed criterion
  }
  out.d_estimate = corrected_D_estimate(seq, horizon);
  out.predicted = 1.0 - out.d_estimate;
  return out;
}

inline void run_dimension(const ExperimentConfig& c, const std::filesystem::path& dir, SuiteResult& res) {
  const auto seq = LengthSequence::parse(c.sequence);
  const std::size_t k = c.k.front();
  if (c.seeds < 20) throw ConfigError("dimension needs seeds >= 20", "seeds");
  const auto d = measure_dimension(seq, k, c.seeds, c.seed, c.horizon, c.threads);
  write_artifact(dir, "dimension.csv", res, [&](std::ostream& o) {
    o << "j,first,last,center,median_sup2\n";
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
      o << d.blocks[b].m << ',' << d.blocks[b].first << ',' << d.blocks[b].last << ',' << num(d.blocks[b].center())
        << ',' << num(d.median_sup2[b]) << '\n';
  });
  const auto or_null = [](bool ok, double x) { return ok ? ordered_json(x) : ordered_json(nullptr); };
  ordered_json j;
  j["tau_hat"] = or_null(d.fit.has_value(), d.fit ? d.fit->tau_hat : 0.0);
  j["stderr"] = or_null(d.fit.has_value(), d.fit ? d.fit->stderr_tau : 0.0);
  j["d_estimate"] = d.d_estimate;
  j["predicted"] = d.predicted;
  j["r2"] = or_null(d.fit.has_value(), d.fit ? d.fit->r2 : 0.0);
  j["k"] = k;
  j["seeds"] = c.seeds;
  j["box_dimension_median"] = or_null(!std::isnan(d.box_median), d.box_median);
  j["box_dimension_members"] = d.box_members;
  write_json(dir, "dimension.json", res, j);
  if (d.fit)
    res.criteria.push_back(criterion("tau_hat_near_prediction", std::abs(d.fit->tau_hat - d.predicted) <= 0.15,
                                     "tau_hat " + num(d.fit->tau_hat) + " vs " + num(d.predicted) + " +- 0.15"));
  else
    res.criteria.push_back(criterion("tau_hat_near_prediction", false, "undefined: a block median of sup |mu_k^|^2 is zero"));
  res.criteria.push_back(criterion("box_dimension_near_prediction",
                                   !std::isnan(d.box_median) && std::abs(d.box_median - d.predicted) <= 0.1,
                                   "median " + num(d.box_median) + " vs " + num(d.predicted) + " +- 0.1 over " +
                                       std::to_string(d.box_members) + " non-empty sets"));
}

// ---------------------------------------------------------------- classify

inline void run_classify(const ExperimentConfig& c, const std::filesystem::path& dir, SuiteResult& res) {
  const auto seq = LengthSequence::parse(c.sequence);
  const std::size_t K = c.horizon;
  const auto cls = classify_shepp(seq, K);
  write_artifact(dir, "classify.csv", res, [&](std::ostream& o) {
    o << "block,first,last,log_block_sum\n";
    std::size_t first = 1;
    for (std::size_t b = 0; b < cls.log_block_sums.size(); ++b) {
      const std::size_t last = std::min(K, 2 * first - 1);
      o << b << ',' << first << ',' << last << ',' << num(cls.log_block_sums[b]) << '\n';
      first = 2 * first;
    }
  });
  ordered_json j;
  j["sequence"] = c.sequence;
  j["K"] = K;
  j["shepp"] = to_string(cls.label);
  j["d_estimate"] = estimate_D(seq, K);
  const auto bias = estimate_D_bias(seq, K);
  j["d_bias"] = bias ? ordered_json(*bias) : ordered_json(nullptr);
  j["d_corrected"] = corrected_D_estimate(seq, K);
  if (seq.kind() != SequenceKind::explicit_list || seq.max_index() > K) j["tan_partial_sum_K"] = tan_partial_sums(seq, K).back();
  write_json(dir, "classify.json", res, j);
}

inline ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  std::istringstream in(serialize(c));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// Runs the configured suite and writes its artifacts. Throws ConfigError for
/// invalid combinations and IoError when the output cannot be written.
inline SuiteResult run_suite(const ExperimentConfig& c, std::ostream& log) {
  if (c.k.empty()) throw ConfigError("k must list at least one stage", "k");
  const auto seq = LengthSequence::parse(c.sequence);
  if (seq.kind() == SequenceKind::explicit_list && c.suite != "classify" && detail::max_stage(c) > seq.max_index())
    throw ConfigError("k exceeds the length of the explicit sequence", "k");

  const std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + c.out);

  SuiteResult res;
  log << "covlab " << c.suite << ": " << c.sequence << ", seed " << c.seed << '\n';
  if (c.suite == "simulate") detail::run_simulate(c, dir, res);
  else if (c.suite == "spectrum") detail::run_spectrum(c, dir, res);
  else if (c.suite == "dimension") detail::run_dimension(c, dir, res);
  else if (c.suite == "classify") detail::run_classify(c, dir, res);
  else detail::run_verify(c, dir, res);

  detail::ordered_json summary;
  summary["suite"] = c.suite;
  std::size_t passed = 0;
  for (const auto& cr : res.criteria) passed += cr.pass;
  summary["pass_count"] = passed;
  summary["fail_count"] = res.criteria.size() - passed;
  summary["criteria"] = detail::ordered_json::array();
  summary["failing"] = detail::ordered_json::array();
  for (const auto& cr : res.criteria) {
    summary["criteria"].push_back({{"name", cr.name}, {"pass", cr.pass}, {"detail", cr.detail}});
    if (!cr.pass) summary["failing"].push_back(cr.name);
    log << (cr.pass ? "  pass  " : "  FAIL  ") << cr.name << ": " << cr.detail << '\n';
  }
  if (c.suite != "classify") {
    try {
      const auto e = resolve_exponents(c);
      summary["exponents"] = {{"p", e.p}, {"q", e.q}, {"d_estimate", e.d_estimate}, {"automatic", e.automatic}};
    } catch (const std::exception&) {
      // no feasible pair, or a sequence too short for the D estimate: nothing to echo
    }
  }
  detail::write_json(dir, "summary.json", res, summary);

  detail::ordered_json manifest;
  manifest["tool"] = "covlab";
  manifest["versions"] = {{"dvcover", version_string},
                          {"compiler", compiler_string()},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  manifest["config"] = detail::config_json(c);
  manifest["seeds"] = {{"master", c.seed},
                       {"replicas", c.suite == "prop32" || c.suite == "prop31" || c.suite == "mass" || c.suite == "vector"
                                        ? c.samples
                                        : c.seeds},
                       {"derivation", "replica r uses replica_seed(master, r)"}};
  manifest["artifacts"] = detail::ordered_json::object();
  for (const auto& name : res.artifacts) manifest["artifacts"][name] = detail::sha256_file(dir / name);
  manifest["timestamp"] = detail::utc_timestamp();
  std::ofstream mf(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!(mf << manifest.dump(2) << '\n')) throw IoError("cannot write manifest.json");
  return res;
}

/// run_suite with exceptions mapped to exit codes.
inline int run_suite_exit_code(const ExperimentConfig& c, std::ostream& log, std::ostream& err) {
  try {
    return run_suite(c, log).all_pass() ? exit_ok : exit_criterion_failed;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_io_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_io_error;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_io_error;
  } catch (const std::domain_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::out_of_range& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::overflow_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  }
}

}  // namespace dvcover
