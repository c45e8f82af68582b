// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "skewdx/column.hpp"
#include "skewdx/error.hpp"
#include "skewdx/operators.hpp"
#include "skewdx/parallel.hpp"

using namespace skewdx;

namespace {

constexpr unsigned kThreadGrid[] = {1, 2, 4, 8};
constexpr AggStrategy kStrategies[] = {AggStrategy::independent,
                                       AggStrategy::shared_atomic,
                                       AggStrategy::hybrid};

}  // namespace

TEST_CASE("chunk_spans covers the rows with near-equal disjoint spans") {
  for (const std::size_t n : {0ul, 1ul, 7ul, 100ul, 101ul}) {
    for (const unsigned t : {1u, 2u, 3u, 8u, 150u}) {
      const auto spans = chunk_spans(n, t);
      REQUIRE(spans.size() == t);
      std::size_t expect_begin = 0;
      std::size_t max_len = 0, min_len = n + 1;
      for (const auto& [begin, end] : spans) {
        CHECK(begin == expect_begin);
        CHECK(end >= begin);
        expect_begin = end;
        max_len = std::max(max_len, end - begin);
        min_len = std::min(min_len, end - begin);
      }
      CHECK(expect_begin == n);
      CHECK(max_len - min_len <= 1);
    }
  }
  CHECK_THROWS_AS(chunk_spans(10, 0), InvalidArgument);
}

TEST_CASE("parallel_materialize equals the sequential operator") {
  const auto gen = generate_fact_column({512, 40'000, 1.0, 3}, Layout::rand);
  Column dim(512);
  std::iota(dim.begin(), dim.end(), 1000u);
  const Column expected = materialize(gen.values, dim);
  for (const unsigned t : kThreadGrid) {
    ParallelPlan plan;
    plan.threads = t;
    CHECK(parallel_materialize(gen.values, dim, plan) == expected);
  }
}

TEST_CASE("parallel_materialize tolerates more threads than rows") {
  Column fact{1, 2, 1};
  Column dim{10, 20};
  ParallelPlan plan;
  plan.threads = 16;
  CHECK(parallel_materialize(fact, dim, plan) == Column{10, 20, 10});
}

TEST_CASE("parallel_select preserves the sequential result and order") {
  const auto gen = generate_fact_column({700, 30'000, 1.2, 5}, Layout::rand);
  std::mt19937_64 rng(11);
  Bitmap bm(700);
  for (std::uint64_t i = 0; i < 700; ++i) {
    if (rng() & 1) bm.set(i);
  }
  const auto expected = select(gen.values, bm);
  for (const unsigned t : kThreadGrid) {
    ParallelPlan plan;
    plan.threads = t;
    const auto got = parallel_select(gen.values, bm, plan);
    CHECK(got == expected);
  }

  const Bitmap none(700);
  ParallelPlan plan;
  plan.threads = 4;
  CHECK(parallel_select(gen.values, none, plan).empty());
}

TEST_CASE("every aggregation strategy equals the sequential counts") {
  std::mt19937_64 rng(2026);
  for (int round = 0; round < 8; ++round) {
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 10'000);
    const std::uint64_t n = 1 + rng() % 100'000;
    const double z = static_cast<double>(rng() % 220) / 100.0;
    // freq layout keeps identifiers rank-ordered, satisfying the hybrid
    // contract that hot identifiers are 1..h
    const auto gen = generate_fact_column({d, n, z, rng()}, Layout::freq);
    const auto expected = aggregate_count(gen.values, d);

    for (const AggStrategy strategy : kStrategies) {
      for (const unsigned t : kThreadGrid) {
        ParallelPlan plan;
        plan.threads = t;
        plan.strategy = strategy;
        plan.hot_threshold = std::min<std::uint32_t>(d, 64);
        CHECK(parallel_aggregate(gen.values, d, plan) == expected);
      }
    }
  }
}

TEST_CASE("hybrid with a full-domain hot threshold never touches the shared path") {
  const auto gen = generate_fact_column({100, 10'000, 1.0, 9}, Layout::freq);
  ParallelPlan plan;
  plan.threads = 4;
  plan.strategy = AggStrategy::hybrid;
  plan.hot_threshold = 100;
  AggMetrics metrics;
  const auto counts = parallel_aggregate(gen.values, 100, plan, &metrics);
  CHECK(counts == aggregate_count(gen.values, 100));
  CHECK(metrics.shared_updates == 0);
  CHECK(metrics.total_updates == 10'000);
}

TEST_CASE("hybrid with h=1 on hot-skewed data keeps most updates private") {
  const std::uint32_t d = 4096;
  const std::uint64_t n = 400'000;
  const auto gen = generate_fact_column({d, n, 2.0, 13}, Layout::freq);
  ParallelPlan plan;
  plan.threads = 8;
  plan.strategy = AggStrategy::hybrid;
  plan.hot_threshold = 1;
  AggMetrics metrics;
  const auto counts = parallel_aggregate(gen.values, d, plan, &metrics);

  // only identifier 1 is private, so the shared counter must equal
  // N minus the top identifier's ground-truth count
  CHECK(metrics.shared_updates == n - gen.ground_truth_counts[0]);
  // z=2 concentrates the majority of updates on the private slot
  CHECK(metrics.shared_updates * 2 < n);
  CHECK(counts == aggregate_count(gen.values, d));
}

TEST_CASE("no updates are lost under contention at high skew") {
  const std::uint32_t d = 1000;
  const std::uint64_t n = 500'000;
  const auto gen = generate_fact_column({d, n, 2.0, 29}, Layout::freq);
  for (const AggStrategy strategy : {AggStrategy::shared_atomic, AggStrategy::hybrid}) {
    ParallelPlan plan;
    plan.threads = 8;
    plan.strategy = strategy;
    plan.hot_threshold = 16;
    const auto counts = parallel_aggregate(gen.values, d, plan);
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(),
                                                std::uint64_t{0});
    CHECK(total == n);
  }
}

TEST_CASE("memory_footprint arithmetic") {
  ParallelPlan plan;
  plan.threads = 4;
  plan.strategy = AggStrategy::independent;
  CHECK(memory_footprint(plan, 100) == 3200);

  plan.strategy = AggStrategy::shared_atomic;
  CHECK(memory_footprint(plan, 100) == 800);

  plan.strategy = AggStrategy::hybrid;
  plan.hot_threshold = 10;
  CHECK(memory_footprint(plan, 100) == 1120);
}

TEST_CASE("hybrid stays cheaper than independent for modest hot regions") {
  ParallelPlan hybrid;
  hybrid.strategy = AggStrategy::hybrid;
  hybrid.hot_threshold = 8192;
  ParallelPlan independent;
  independent.strategy = AggStrategy::independent;
  for (const unsigned t : {2u, 4u, 8u, 16u}) {
    hybrid.threads = t;
    independent.threads = t;
    const std::uint64_t d = 1'000'000;
    CHECK(memory_footprint(hybrid, d) < memory_footprint(independent, d));
    ParallelPlan shared = hybrid;
    shared.strategy = AggStrategy::shared_atomic;
    CHECK(memory_footprint(hybrid, d) ==
          memory_footprint(shared, d) + std::uint64_t{t} * 8192 * 8);
  }
}

TEST_CASE("hybrid rejects an out-of-range hot threshold") {
  ParallelPlan plan;
  plan.strategy = AggStrategy::hybrid;
  plan.hot_threshold = 11;
  CHECK_THROWS_AS(parallel_aggregate(Column{1, 2}, 10, plan), InvalidArgument);
}

TEST_CASE("parallel operators reject out-of-domain values") {
  ParallelPlan plan;
  plan.threads = 3;
  CHECK_THROWS_AS(parallel_aggregate(Column{1, 99}, 10, plan), DomainViolation);
  CHECK_THROWS_AS(parallel_materialize(Column{99}, Column{1, 2}, plan), DomainViolation);
}
