// covlab: command-line front end for the covering experiments.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dvcover/orchestrator.hpp"

namespace {

using dvcover::ExperimentConfig;

struct Flags {
  std::map<std::string, std::string> values;                   // config key -> raw flag text
  std::vector<std::pair<CLI::Option*, std::string>> options;   // in registration order

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(app->add_option(flag, values[key], help), key);
  }

  /// Applies every flag given on the command line, in registration order.
  void apply(ExperimentConfig& c) const {
    for (const auto& [opt, key] : options)
      if (opt->count() > 0) dvcover::apply_setting(c, key, values.at(key));
  }
};

std::string subcommand_help() {
  return std::string("\nConfig files hold key=value lines (keys: suite sequence k horizon seed seeds samples tau p q\n"
                     "m_max h d1 threads out); flags override file values.\n\n"
                     "Sequences: alpha:<a>, alpha:<a>:offset=<c>, critical-tan, list:<l1>,<l2>,..., file:<path>\n\n"
                     "Exit codes: 0 all criteria pass, 1 a criterion failed, 2 configuration error, 3 I/O error.\n\n"
                     "CSV schemas:\n") +
         dvcover::csv_schemas();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random covering of the circle: simulation, spectra and moment checks", "covlab"};
  app.require_subcommand(1);
  app.footer(subcommand_help());

  Flags flags;
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "Read settings from a key=value file");
  flags.add(&app, "--seed", "seed", "Master seed");
  flags.add(&app, "--threads", "threads", "Worker threads (results do not depend on this)");
  flags.add(&app, "--out", "out", "Output directory");
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");

  auto* simulate = app.add_subcommand("simulate", "Uncovered-set measures and box counts per replica");
  auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients of the stage-k measures");
  auto* verify = app.add_subcommand("verify", "Monte Carlo checks of moment identities and bounds");
  auto* dimension = app.add_subcommand("dimension", "Fourier decay exponent and box dimension against 1 - D");
  auto* classify = app.add_subcommand("classify", "Sequence diagnostics: Shepp series, D estimate, Tan sums");

  for (auto* sub : {simulate, spectrum, verify, dimension, classify}) {
    sub->fallthrough();
    flags.add(sub, "--sequence", "sequence", "Length sequence, e.g. alpha:0.5");
  }
  for (auto* sub : {simulate, spectrum, verify, dimension}) flags.add(sub, "--k", "k", "Stage or comma-separated stages");
  for (auto* sub : {simulate, spectrum, dimension}) flags.add(sub, "--seeds", "seeds", "Number of replicas");
  for (auto* sub : {spectrum, verify, dimension}) flags.add(sub, "--m-max", "m_max", "Number of dyadic blocks above 1/l_k");
  for (auto* sub : {verify, dimension}) flags.add(sub, "--tau", "tau", "Decay exponent tau in [0,1)");
  for (auto* sub : {verify, dimension, classify}) flags.add(sub, "--K", "horizon", "Horizon K for sequence diagnostics");
  flags.add(verify, "--suite", "suite", "prop32 | prop31 | mass | vector");
  flags.add(verify, "--samples", "samples", "Monte Carlo samples per report");
  flags.add(verify, "--p", "p", "Moment exponent in (1,2]");
  flags.add(verify, "--q", "q", "l^q exponent or 'auto'");
  flags.add(verify, "--shift", "h", "Shift h in (0,1/2); 0 picks l_k/4 per stage");
  flags.add(verify, "--d1", "d1", "First difference convention: M1 or M1_minus_1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dvcover::exit_config_error;
  }

  CLI::App* chosen = app.get_subcommands().front();
  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = dvcover::load_config(config_path);
    const std::string name = chosen->get_name();
    if (name != "verify") {
      cfg.suite = name;
    } else if (cfg.suite != "prop32" && cfg.suite != "prop31" && cfg.suite != "mass" && cfg.suite != "vector") {
      cfg.suite = "mass";
    }
    flags.apply(cfg);
    if (name == "verify" && (cfg.suite != "prop32" && cfg.suite != "prop31" && cfg.suite != "mass" && cfg.suite != "vector"))
      throw dvcover::ConfigError("verify --suite expects prop32, prop31, mass or vector", "suite");
    if (print_config) {
      std::cout << dvcover::serialize(cfg);
      if (name == "verify" || !cfg.q) {
        const auto e = dvcover::resolve_exponents(cfg);
        std::cout << "# resolved p=" << dvcover::detail::format_real(e.p) << " q=" << dvcover::detail::format_real(e.q)
                  << " D=" << dvcover::detail::format_real(e.d_estimate) << '\n';
      }
      return dvcover::exit_ok;
    }
  } catch (const dvcover::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return dvcover::exit_config_error;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return dvcover::exit_io_error;
  }
  return dvcover::run_suite_exit_code(cfg, std::cout, std::cerr);
}
