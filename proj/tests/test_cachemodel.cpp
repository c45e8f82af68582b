// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "skewdx/cachemodel.hpp"
#include "skewdx/column.hpp"
#include "skewdx/error.hpp"

using namespace skewdx;

TEST_CASE("line_frequencies sums adjacent ranks under freq layout") {
  const std::vector<double> value_freqs{0.4, 0.3, 0.2, 0.1};
  CacheGeometry geom{1, 8, 4};  // two elements per line
  const auto f = line_frequencies(value_freqs, Layout::freq, geom, 0);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == doctest::Approx(0.7));
  CHECK(f[1] == doctest::Approx(0.3));
}

TEST_CASE("line_frequencies with one element per line is a permutation") {
  const std::vector<double> value_freqs{0.5, 0.25, 0.15, 0.1};
  CacheGeometry geom{1, 4, 4};
  auto freq = line_frequencies(value_freqs, Layout::freq, geom, 7);
  auto rand = line_frequencies(value_freqs, Layout::rand, geom, 7);
  CHECK(freq == value_freqs);
  std::sort(rand.begin(), rand.end(), std::greater<>());
  for (std::size_t i = 0; i < rand.size(); ++i) {
    CHECK(rand[i] == doctest::Approx(value_freqs[i]));
  }
}

TEST_CASE("line_frequencies keeps uniform distributions uniform") {
  const std::vector<double> value_freqs(64, 1.0 / 64);
  CacheGeometry geom{1, 64, 4};
  for (const Layout layout : {Layout::freq, Layout::rand}) {
    const auto f = line_frequencies(value_freqs, layout, geom, 3);
    REQUIRE(f.size() == 4);
    for (const double v : f) CHECK(v == doctest::Approx(0.25));
  }
}

TEST_CASE("line_frequencies rejects an empty vector") {
  CacheGeometry geom;
  CHECK_THROWS_AS(line_frequencies(std::vector<double>{}, Layout::freq, geom, 0),
                  InvalidArgument);
}

TEST_CASE("estimate_hit_rate trivial cases") {
  const std::vector<double> single{1.0};
  CHECK(estimate_hit_rate(single, 1) == 1.0);
  CHECK(estimate_hit_rate(single, 64) == 1.0);

  // as many nonzero lines as capacity: everything fits
  const std::vector<double> four(4, 0.25);
  CHECK(estimate_hit_rate(four, 4) == 1.0);
  CHECK(estimate_hit_rate(four, 3) < 1.0);

  CHECK_THROWS_AS(estimate_hit_rate(four, 0), InvalidArgument);
}

TEST_CASE("estimate_hit_rate uniform closed form") {
  // With L uniform lines and capacity S < L the horizon is exactly S, so the
  // estimate collapses to 1 - (1 - 1/L)^S.
  const std::size_t lines = 1024;
  const std::uint64_t s = 128;
  const std::vector<double> f(lines, 1.0 / static_cast<double>(lines));
  const double expected =
      -std::expm1(static_cast<double>(s) * std::log1p(-1.0 / static_cast<double>(lines)));
  CHECK(estimate_hit_rate(f, s) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("estimate_hit_rate is monotone in capacity") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 30; ++round) {
    const std::size_t lines = 2 + rng() % 400;
    std::vector<double> f(lines);
    double sum = 0;
    for (double& v : f) {
      v = static_cast<double>(rng() % 1000 + 1);
      sum += v;
    }
    for (double& v : f) v /= sum;

    double prev = 0.0;
    for (std::uint64_t s = 1; s <= lines + 4; s = s * 2 + 1) {
      const double est = estimate_hit_rate(f, s);
      CHECK(est >= prev - 1e-12);
      CHECK(est >= 0.0);
      CHECK(est <= 1.0);
      prev = est;
    }
  }
}

TEST_CASE("shifting mass toward the hot line never hurts") {
  // two-line distributions [0.5+d, 0.5-d] at S=1: skew raises the estimate
  double prev = -1.0;
  for (double d = 0.0; d < 0.5; d += 0.05) {
    const std::vector<double> f{0.5 + d, 0.5 - d};
    const double est = estimate_hit_rate(f, 1);
    CHECK(est >= prev - 1e-12);
    prev = est;
  }
}

TEST_CASE("simulate_lru repeated line") {
  const std::vector<std::uint32_t> trace{1, 1, 1, 1};
  const auto stats = simulate_lru(trace, 1);
  CHECK(stats.hit_rate() == doctest::Approx(0.75));
  CHECK(stats.distinct_lines == 1);
}

TEST_CASE("simulate_lru thrashing pair") {
  const std::vector<std::uint32_t> trace{1, 2, 1, 2};
  CHECK(simulate_lru(trace, 1).hit_rate() == doctest::Approx(0.0));
  CHECK(simulate_lru(trace, 2).hit_rate() == doctest::Approx(0.5));
}

TEST_CASE("simulate_lru empty trace") {
  const auto stats = simulate_lru(std::vector<std::uint32_t>{}, 4);
  CHECK(stats.hit_rate() == 0.0);
  CHECK(stats.accesses == 0);
}

TEST_CASE("simulate_lru large cache leaves only cold misses") {
  std::mt19937_64 rng(5);
  std::vector<std::uint32_t> trace(20'000);
  for (auto& line : trace) line = static_cast<std::uint32_t>(rng() % 300);
  const auto stats = simulate_lru(trace, 512);
  CHECK(stats.hits == trace.size() - stats.distinct_lines);
  CHECK(stats.hit_rate() ==
        doctest::Approx(1.0 - static_cast<double>(stats.distinct_lines) / trace.size()));
  CHECK(stats.steady_hit_rate(512) == doctest::Approx(1.0));
}

TEST_CASE("simulate_lru agrees with a reference stack-distance scan") {
  // brute-force oracle: an access hits iff fewer than S distinct lines were
  // referenced since the previous access to the same line
  std::mt19937_64 rng(17);
  std::vector<std::uint32_t> trace(3000);
  for (auto& line : trace) line = static_cast<std::uint32_t>(rng() % 40);

  for (const std::uint64_t s : {1ull, 3ull, 8ull, 21ull, 64ull}) {
    std::uint64_t expected_hits = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      std::vector<std::uint32_t> between;
      bool seen = false;
      for (std::size_t j = k; j-- > 0;) {
        if (trace[j] == trace[k]) {
          seen = true;
          break;
        }
        between.push_back(trace[j]);
      }
      if (!seen) continue;
      std::sort(between.begin(), between.end());
      between.erase(std::unique(between.begin(), between.end()), between.end());
      if (between.size() < s) ++expected_hits;
    }
    CHECK(simulate_lru(trace, s).hits == expected_hits);
  }
}

TEST_CASE("trace_from_column boundary arithmetic") {
  CacheGeometry geom{1, 64, 4};
  CHECK(trace_from_column(Column{1, 16, 17}, geom) ==
        std::vector<std::uint32_t>{0, 0, 1});
  CHECK(trace_from_column(Column{33}, geom) == std::vector<std::uint32_t>{2});

  CacheGeometry unit{1, 4, 4};
  CHECK(trace_from_column(Column{1, 2, 9}, unit) ==
        std::vector<std::uint32_t>{0, 1, 8});

  CHECK_THROWS_AS(trace_from_column(Column{0}, geom), DomainViolation);
}

TEST_CASE("model tracks the simulator on a small skewed workload") {
  const std::uint32_t d = 1 << 16;
  const std::uint64_t s = 1 << 9;
  const std::uint64_t seed = 31;
  CacheGeometry geom{s, 64, 4};

  for (const Layout layout : {Layout::freq, Layout::rand}) {
    const ZipfSpec spec{d, 2'000'000, 1.0, seed};
    const auto value_freqs = zipf_frequencies(spec);
    const auto lf = line_frequencies(value_freqs, layout, geom, seed);
    const double estimate = estimate_hit_rate(lf, s);

    const auto gen = generate_fact_column(spec, layout);
    const auto trace = trace_from_column(gen.values, geom);
    const double simulated = simulate_lru(trace, s).steady_hit_rate(s);

    CHECK(std::abs(estimate - simulated) <= 0.05);
  }
}
