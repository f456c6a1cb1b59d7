#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dvcover/covering.hpp"
#include "dvcover/stats.hpp"

using namespace dvcover;
using Catch::Approx;

namespace {

CoverRealization manual(std::vector<double> lengths, std::vector<double> omegas) {
  CoverRealization r;
  r.lengths = std::move(lengths);
  r.omegas = std::move(omegas);
  return r;
}

}  // namespace

TEST_CASE("sample_realization is a pure function of (seed, k)", "[covering-engine]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  const auto a = sample_realization(seq, 1000, 42);
  const auto b = sample_realization(seq, 1000, 42);
  CHECK(a.omegas == b.omegas);
  CHECK(a.lengths == b.lengths);

  const auto c = sample_realization(seq, 1000, 43);
  CHECK(a.omegas != c.omegas);

  // prefixes agree across K
  const auto shorter = sample_realization(seq, 10, 42);
  for (std::size_t k = 0; k < 10; ++k) CHECK(shorter.omegas[k] == a.omegas[k]);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(a.omegas[k - 1] == omega_at(42, k));

  for (double w : a.omegas) {
    REQUIRE(w >= 0.0);
    REQUIRE(w < 1.0);
  }
  CHECK_THROWS(sample_realization(seq, 0, 1));
}

TEST_CASE("omegas are uniform on [0,1)", "[covering-engine]") {
  const std::size_t n = 100000;
  const auto r = sample_realization(LengthSequence::alpha_over_k(0.5), n, 2024);
  const auto s = stats::summarize(r.omegas);
  CHECK(std::abs(s.mean - 0.5) <= 3.0 / std::sqrt(12.0 * n));
  CHECK(s.variance == Approx(1.0 / 12.0).margin(2e-3));
}

TEST_CASE("uncovered sets", "[covering-engine]") {
  const auto one = manual({0.5}, {0.25});
  const auto u = uncovered_set(one, 1);
  REQUIRE(u.arcs().size() == 2);
  CHECK(u.arcs()[0] == Arc{0.0, 0.25});
  CHECK(u.arcs()[1] == Arc{0.75, 1.0});

  const auto cover = manual({0.6, 0.6}, {0.0, 0.5});
  CHECK(uncovered_set(cover, 2).is_empty());
  CHECK(uncovered_set(cover, 2).measure() == 0.0);

  CHECK(uncovered_set(one, 0) == CircleArcSet::full());
  CHECK_THROWS_AS(uncovered_set(one, 2), std::out_of_range);
}

TEST_CASE("incremental and from-scratch uncovered sets agree; refinement is monotone", "[covering-engine][property]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto r = sample_realization(seq, 200, seed);
    const auto inc = uncovered_sets_incremental(r, 200);
    for (std::size_t k = 1; k <= 200; ++k) {
      const auto scratch = uncovered_set(r, k);
      REQUIRE(approx_equal(inc[k], scratch, 1e-12));
      REQUIRE(is_subset(scratch, uncovered_set(r, k - 1)));
      if (scratch.measure() > 0.0)
        for (int j = 0; j <= 20; j += 4) REQUIRE(scratch.box_count(j) >= 1);
    }
  }
}

TEST_CASE("expected uncovered measure is prod (1 - l_j)", "[covering-engine]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  const std::size_t k = 30;
  std::vector<double> measures;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) measures.push_back(uncovered_set(sample_realization(seq, k, seed), k).measure());
  const auto s = stats::summarize(measures);
  CHECK(std::abs(s.mean - exact_uncovered_probability(seq, k)) <= 3.0 * s.stderr_of_mean);
}

TEST_CASE("exact_uncovered_probability", "[covering-engine]") {
  CHECK(exact_uncovered_probability(LengthSequence::explicit_values({0.5, 0.25}), 2) == Approx(0.375).epsilon(1e-15));
  CHECK(exact_uncovered_probability(LengthSequence::alpha_over_k(0.5), 0) == 1.0);
  const auto seq = LengthSequence::alpha_over_k(0.5);
  double direct = 1.0;
  for (std::size_t j = 1; j <= 100; ++j) direct *= 1.0 - 0.5 / static_cast<double>(j);
  CHECK(std::abs(exact_uncovered_probability(seq, 100) - direct) <= 1e-12);
}

TEST_CASE("box dimension estimates", "[covering-engine]") {
  const auto r = sample_realization(LengthSequence::alpha_over_k(0.5), 10, 1);
  const auto full = box_dimension_estimate(r, 0, 2, 12);
  CHECK(full.slope == Approx(1.0).epsilon(1e-14));
  CHECK(full.counts.front() == 4);

  const auto half = box_dimension_of(CircleArcSet::from_arc(0.1234, 0.5), 10, 20);
  CHECK(half.slope == Approx(1.0).margin(1e-3));

  const auto covered = manual({0.6, 0.6}, {0.0, 0.5});
  CHECK_THROWS_AS(box_dimension_estimate(covered, 2, 4, 8), std::domain_error);
  CHECK_THROWS_AS(box_dimension_of(CircleArcSet::full(), 8, 8), std::invalid_argument);

  CHECK(default_box_window(0.5 / 4096).second == 10);
  CHECK(default_box_window(0.01).second == 6);
}

TEST_CASE("box dimension median tracks 1 - alpha", "[covering-engine][monte-carlo]") {
  const auto seq = LengthSequence::alpha_over_k(0.5);
  const std::size_t k = 1 << 12;
  const auto [j0, j1] = default_box_window(seq(k));
  std::vector<double> slopes;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto u = uncovered_set(sample_realization(seq, k, seed), k);
    if (u.box_count(j1) == 0) continue;
    slopes.push_back(box_dimension_of(u, j0, j1).slope);
  }
  REQUIRE(slopes.size() >= 10);
  CHECK(stats::median(slopes) == Approx(0.5).margin(0.1));
}

TEST_CASE("shrinking every arc enlarges the uncovered set", "[covering-engine][property]") {
  const auto seq = LengthSequence::alpha_over_k(0.9);
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto r = sample_realization(seq, 500, seed);
    for (double lambda : {0.5, 0.9}) {
      const auto small = r.with_scaled_lengths(lambda);
      for (std::size_t k : {1, 10, 100, 500}) REQUIRE(is_subset(uncovered_set(r, k), uncovered_set(small, k)));
    }
  }
}
