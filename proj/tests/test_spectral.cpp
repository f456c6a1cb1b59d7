#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "dvcover/chaos_measure.hpp"
#include "dvcover/spectral.hpp"
#include "test_support.hpp"

using namespace dvcover;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("build_blocks", "[spectral-lab]") {
  const auto b = build_blocks(0.25, 3);
  REQUIRE(b.blocks.size() == 4);
  CHECK(b.blocks[0].first == 1);
  CHECK(b.blocks[0].last == 4);
  CHECK(b.blocks[1].first == 4);
  CHECK(b.blocks[1].last == 8);
  CHECK(b.blocks[1].shift == 0.25 / 4.0);
  CHECK(b.blocks[3].last == 32);

  CHECK_THROWS_AS(build_blocks(1e-3, 25), std::overflow_error);
  CHECK_THROWS_AS(build_blocks(1.5, 2), std::domain_error);
  CHECK_THROWS_AS(build_blocks(0.5, 0), std::invalid_argument);
}

TEST_CASE("blocks partition the range and each shift cancels by at least sqrt 2", "[spectral-lab][property]") {
  for (double ell : {0.5, 0.1, 0.01, 0.0371, 1.0 / 3.0}) {
    const auto b = build_blocks(ell, 10);
    std::int64_t expected = 1;
    for (const auto& blk : b.blocks) {
      REQUIRE(blk.first == expected);  // contiguous, hence disjoint and exhaustive
      REQUIRE(blk.last >= blk.first);
      expected = blk.last;
    }
    CHECK(b.end() == static_cast<std::int64_t>(std::ceil(1024.0 / ell)));
    for (std::size_t m = 1; m < b.blocks.size(); ++m) {
      const auto& blk = b.blocks[m];
      double worst = 2.0;
      for (std::int64_t n = blk.first; n < blk.last; ++n) worst = std::min(worst, cancellation_factor(n, blk.shift));
      REQUIRE(worst >= std::sqrt(2.0) - 1e-12);
    }
  }
}

TEST_CASE("translation identity", "[spectral-lab]") {
  CHECK(translation_identity_residual(PiecewiseDensity::constant(2.5), 0.3, 7) < 1e-15);

  const auto seq = LengthSequence::alpha_over_k(0.5);
  const auto r = sample_realization(seq, 3, 2024);
  const auto d3 = density_Dk(r, 3);
  const auto blocks = build_blocks(seq(3), 4);
  const auto& blk = blocks.blocks[2];
  const std::int64_t n = (blk.first + blk.last) / 2;
  CHECK(translation_identity_residual(d3, blk.shift, n) < 1e-10 * (1.0 + std::abs(fourier_coefficient(d3, n))));

  std::mt19937_64 gen(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing::random_density(gen);
    const double h = 0.001 + 0.998 * u(gen);
    for (std::int64_t m : {1, 3, 64, 999, 65537}) {
      const double scale = 1.0 + std::abs(fourier_coefficient(f, m));
      REQUIRE(translation_identity_residual(f, h, m) < 1e-10 * scale);
    }
  }
}

TEST_CASE("cancellation bound on eligible frequencies", "[spectral-lab][property]") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = testing::random_density(gen);
    const auto check = check_translation_bound(f, 0.001 + 0.498 * u(gen));
    REQUIRE(check.eligible == 1000);
    REQUIRE(check.holds());
  }
  const auto seq = LengthSequence::alpha_over_k(0.5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = sample_realization(seq, 8, seed);
    for (std::size_t k : {1, 4, 8}) {
      const auto blocks = build_blocks(seq(k), 6);
      for (std::size_t m = 1; m < blocks.blocks.size(); ++m)
        REQUIRE(check_translation_bound(density_Dk(r, k), blocks.blocks[m].shift).holds());
    }
  }
}

TEST_CASE("weighted_lq_norm", "[spectral-lab]") {
  CHECK(weighted_lq_norm(PiecewiseDensity{}, 0.3, 4.0, 100) == 0.0);
  CHECK(weighted_lq_norm(PiecewiseDensity::constant(1.0), 0.3, 4.0, 100) < 1e-14);

  CoverRealization r;
  r.lengths = {0.5};
  r.omegas = {0.25};
  CHECK(weighted_lq_norm(density_Mk(r, 1), 0.0, 2.0, 1) == Approx(2.0 / pi).epsilon(1e-14));

  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_density(gen);
    double prev = 0.0;
    for (std::int64_t N : {1, 2, 10, 100, 1000}) {
      const double v = weighted_lq_norm(f, 0.4, 22.0, N);
      REQUIRE(v >= prev * (1.0 - 1e-14));
      prev = v;
    }
    // q = 2, tau = 0 against a direct sum
    double direct = 0.0;
    for (std::int64_t n = 1; n <= 300; ++n) direct += std::norm(fourier_coefficient(f, n));
    REQUIRE(weighted_lq_norm(f, 0.0, 2.0, 300) == Approx(std::sqrt(direct)).epsilon(1e-10));
  }
}

TEST_CASE("decay_exponent on planted power laws", "[spectral-lab]") {
  SECTION("exact") {
    std::vector<FrequencyBlock> singletons;
    for (int j = 2; j <= 14; ++j) singletons.push_back({j, std::int64_t{1} << j, (std::int64_t{1} << j) + 1, 0.0});
    const auto rep = spectrum_report_from([](std::int64_t n) { return std::pow(static_cast<double>(n), -0.5); }, singletons);
    const std::vector<SpectrumReport> ensemble(20, rep);
    const auto fit = decay_exponent(ensemble, 0, singletons.size() - 1);
    CHECK(fit.tau_hat == Approx(0.5).margin(1e-6));
    CHECK(fit.stderr_tau < 1e-9);
    CHECK(fit.r2 == Approx(1.0).margin(1e-12));
  }
  SECTION("perturbed") {
    const auto blocks = octave_blocks(6, 16);
    const auto rep = spectrum_report_from(
        [](std::int64_t n) {
          const double x = static_cast<double>(n);
          return std::pow(x, -0.5) * (1.0 + 0.1 * std::sin(x));
        },
        blocks);
    const std::vector<SpectrumReport> ensemble(20, rep);
    CHECK(decay_exponent(ensemble, 0, blocks.size() - 1).tau_hat == Approx(0.5).margin(0.02));
  }
  SECTION("preconditions") {
    const auto blocks = octave_blocks(2, 8);
    const auto rep = spectrum_report_from([](std::int64_t) { return 1.0; }, blocks);
    CHECK_THROWS_AS(decay_exponent(std::vector<SpectrumReport>(19, rep), 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(decay_exponent(std::vector<SpectrumReport>(20, rep), 0, 2), std::invalid_argument);
    const auto zero = spectrum_report_from([](std::int64_t) { return 0.0; }, blocks);
    CHECK_THROWS_AS(decay_exponent(std::vector<SpectrumReport>(20, zero), 0, 5), std::domain_error);
  }
}

TEST_CASE("decay exponent of the finite-stage measures", "[spectral-lab][monte-carlo]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  const std::size_t k = 1 << 12;
  const auto blocks = octave_blocks(2, 11);
  std::vector<SpectrumReport> ensemble;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto seed = replica_seed(1, s);
    ensemble.push_back(spectrum_report(density_Mk(sample_realization(seq, k, seed), k), blocks, seed, k));
  }
  const auto fit = decay_exponent(ensemble, 0, blocks.size() - 1);
  INFO("tau_hat = " << fit.tau_hat << " +- " << fit.stderr_tau);
  CHECK(fit.tau_hat >= 0.35);
  CHECK(fit.tau_hat <= 0.65);
}

TEST_CASE("feasible_exponents", "[spectral-lab]") {
  const auto a = feasible_exponents(0.3, 0.5);
  REQUIRE(a);
  CHECK(a->p == 2.0);
  CHECK(a->q == 22.0);

  const auto b = feasible_exponents(0.0, 0.0);
  REQUIRE(b);
  CHECK(b->q == 6.0);

  CHECK_FALSE(feasible_exponents(0.6, 0.5));
  CHECK_FALSE(feasible_exponents(0.5, 0.5));

  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double tau = 0.05 * i, D = 0.05 * j;
      const auto e = feasible_exponents(tau, D);
      if (tau + D >= 1.0 - 1e-12) {
        CHECK_FALSE(e);
        continue;
      }
      REQUIRE(e);
      const auto [first, second] = exponent_conditions(tau, D, e->p, e->q);
      REQUIRE(first > exponent_margin);
      REQUIRE(second < -1.0 - exponent_margin);
      REQUIRE(std::fmod(e->q, 2.0) == 0.0);
      const auto [pf, ps] = exponent_conditions(tau, D, e->p, e->q - 2.0);  // minimality
      REQUIRE((e->q - 2.0 < 2.0 || !(pf > exponent_margin && ps < -1.0 - exponent_margin)));
    }
}

TEST_CASE("series bound terms", "[spectral-lab]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  const auto t = series_bound_terms(seq, 0.3, 2.0, 22.0, 1 << 16);
  const double power = 2.0 - 0.3 - 2.0 / 22.0;
  CHECK(t[0] == Approx(std::pow(0.5, power) * std::exp(0.5)).epsilon(1e-14));
  CHECK(last_block_fraction(t) < 0.10);

  // tau beyond 1 - D: the tail no longer thins out
  const auto bad = series_bound_terms(seq, 0.6, 2.0, 22.0, 1 << 16);
  CHECK(last_block_fraction(bad) > 0.10);
  CHECK(bad.back() > bad[bad.size() / 2 - 1] * 0.5);
}
