#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dvcover/orchestrator.hpp"

using namespace dvcover;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dvcover-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig quick(const std::string& suite, const fs::path& out) {
  ExperimentConfig c;
  c.suite = suite;
  c.out = out.string();
  c.seeds = 20;
  c.samples = 2000;
  c.k = {8, 32};
  return c;
}

}  // namespace

TEST_CASE("config parsing", "[cli-orchestrator]") {
  SECTION("defaults and comments") {
    const auto c = parse_config_text("# experiment\n\nsequence = alpha:0.25  # tail comment\nseed=7\n");
    CHECK(c.sequence == "alpha:0.25");
    CHECK(c.seed == 7);
    CHECK(c.suite == ExperimentConfig{}.suite);
    CHECK_FALSE(c.q.has_value());
  }
  SECTION("flags override file values") {
    auto c = parse_config_text("sequence=alpha:0.5\nsuite=mass\nseed=42\nk=4,8\n");
    apply_setting(c, "seed", "99");
    apply_setting(c, "k", "16");
    CHECK(c.seed == 99);
    CHECK(c.k == std::vector<std::size_t>{16});
    CHECK(c.sequence == "alpha:0.5");
  }
  SECTION("unknown key is named with its line") {
    try {
      (void)parse_config_text("seed=1\nbogus=3\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "bogus");
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
  }
  SECTION("type errors carry the line and key") {
    try {
      (void)parse_config_text("seed=1\n\ntau=0.3x\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "tau");
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("samples=-5"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("p=2.5"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("q=1"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("k=4,,8"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("sequence=alpha:-1"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("d1=M2"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just text"), ConfigError);
  }
  SECTION("missing file is an I/O failure") {
    CHECK_THROWS_AS(load_config("/nonexistent/dvcover.cfg"), std::ios_base::failure);
  }
}

TEST_CASE("config round trip", "[cli-orchestrator][property]") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::string> seqs{"alpha:0.5", "alpha:0.123456789", "critical-tan", "list:0.5,0.25,0.125",
                                      "alpha:1.5:offset=2"};
  for (int trial = 0; trial < 200; ++trial) {
    ExperimentConfig c;
    c.suite = known_suites()[gen() % known_suites().size()];
    c.sequence = seqs[gen() % seqs.size()];
    c.k = {1 + gen() % 1000, 1 + gen() % 1000};
    c.horizon = 2 + gen() % 100000;
    c.seed = gen();
    c.seeds = 1 + gen() % 500;
    c.samples = 1 + gen() % 100000;
    c.tau = u(gen) * 0.99;
    c.p = 1.0 + 0.5 * (1.0 + u(gen)) * 0.999;
    if (gen() % 2) c.q = 2.0 + 40.0 * u(gen);
    c.m_max = 1 + static_cast<int>(gen() % 20);
    c.h = 0.49 * u(gen);
    c.d1 = gen() % 2 ? FirstDifference::M1 : FirstDifference::M1_minus_1;
    c.threads = 1 + static_cast<unsigned>(gen() % 16);
    c.out = "out dir/" + std::to_string(trial);
    REQUIRE(parse_config_text(serialize(c)) == c);
  }
}

TEST_CASE("q=auto resolves through the exponent solver", "[cli-orchestrator]") {
  auto c = parse_config_text("sequence=alpha:0.5\ntau=0.3\nq=auto\n");
  const auto e = resolve_exponents(c);
  CHECK(e.automatic);
  CHECK(e.d_estimate == Catch::Approx(0.5).margin(1e-12));
  CHECK(e.p == 2.0);
  CHECK(e.q == 22.0);

  apply_setting(c, "q", "30");
  CHECK(resolve_exponents(c).q == 30.0);

  auto bad = parse_config_text("sequence=alpha:0.5\ntau=0.6\n");
  CHECK_THROWS_AS(resolve_exponents(bad), ConfigError);
}

TEST_CASE("sha256 of an artifact", "[cli-orchestrator]") {
  const auto dir = scratch("sha");
  fs::create_directories(dir);
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  CHECK(detail::sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("suites", "[cli-orchestrator]") {
  std::ostringstream log, err;
  SECTION("mass at k = 1 passes trivially") {
    auto c = quick("mass", scratch("mass"));
    c.k = {1};
    CHECK(run_suite_exit_code(c, log, err) == exit_ok);
    const auto summary = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
    CHECK(summary["pass_count"] == 1);
    CHECK(summary["fail_count"] == 0);
  }
  SECTION("prop32 on two arcs") {
    auto c = quick("prop32", scratch("prop32"));
    c.sequence = "list:0.5,0.25";
    c.k = {1, 2};
    c.samples = 100000;
    CHECK(run_suite_exit_code(c, log, err) == exit_ok);
    const auto csv = slurp(fs::path(c.out) / "verify.csv");
    CHECK(csv.find("Mk_moment,2,2,0,0,") != std::string::npos);
    CHECK(csv.find("2.6666666666666665,equals") != std::string::npos);
  }
  SECTION("manifest lists checksums of every artifact") {
    auto c = quick("simulate", scratch("manifest"));
    REQUIRE(run_suite_exit_code(c, log, err) == exit_ok);
    const auto manifest = nlohmann::json::parse(slurp(fs::path(c.out) / "manifest.json"));
    CHECK(manifest["config"]["suite"] == "simulate");
    CHECK(manifest["seeds"]["master"] == 42);
    REQUIRE(manifest["artifacts"].size() == 2);
    for (const auto& [name, sum] : manifest["artifacts"].items())
      CHECK(sum == detail::sha256_file(fs::path(c.out) / name));
    CHECK(parse_config_text(serialize(c)) == c);
  }
  SECTION("criterion failure exits 1 and lists the failure") {
    auto c = quick("dimension", scratch("dimfail"));
    c.sequence = "alpha:0.25";
    c.k = {64};
    CHECK(run_suite_exit_code(c, log, err) == exit_criterion_failed);
    const auto summary = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
    CHECK(summary["failing"][0] == "tau_hat_near_prediction");
  }
  SECTION("configuration errors exit 2") {
    auto c = quick("dimension", scratch("cfg"));
    c.seeds = 5;
    CHECK(run_suite_exit_code(c, log, err) == exit_config_error);
    auto d = quick("prop32", scratch("cfg2"));
    d.sequence = "list:0.5,0.25";
    d.k = {3};
    CHECK(run_suite_exit_code(d, log, err) == exit_config_error);
  }
  SECTION("unwritable output exits 3") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    auto c = quick("mass", blocker / "sub");
    CHECK(run_suite_exit_code(c, log, err) == exit_io_error);
  }
}

TEST_CASE("reruns are byte-identical for any thread count", "[cli-orchestrator]") {
  for (const std::string suite : {"simulate", "spectrum", "prop31", "mass", "vector", "dimension", "classify"}) {
    auto a = quick(suite, scratch(suite + "-a"));
    auto b = quick(suite, scratch(suite + "-b"));
    if (suite == "dimension") a.k = b.k = {256};
    if (suite == "vector") a.samples = b.samples = 100;
    a.m_max = b.m_max = 2;
    b.threads = 3;
    std::ostringstream log, err;
    run_suite(a, log);
    const auto res = run_suite(b, log);
    for (const auto& name : res.artifacts) {
      INFO(suite << "/" << name);
      CHECK(slurp(fs::path(a.out) / name) == slurp(fs::path(b.out) / name));
    }
    const auto ma = nlohmann::json::parse(slurp(fs::path(a.out) / "manifest.json"));
    const auto mb = nlohmann::json::parse(slurp(fs::path(b.out) / "manifest.json"));
    CHECK(ma["artifacts"] == mb["artifacts"]);
  }
}
