// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "skewdx/column.hpp"
#include "skewdx/error.hpp"
#include "skewdx/operators.hpp"
#include "skewdx/permindex.hpp"

using namespace skewdx;

namespace {

struct Workload {
  Column fact;
  Column dim;
  std::uint32_t d;
  PermutationIndex index;
  Column fact_recoded;
  Column dim_permuted;
};

Workload make_workload(std::uint32_t d, std::uint64_t n, double z, std::uint64_t seed) {
  Workload w;
  w.d = d;
  w.fact = generate_fact_column({d, n, z, seed}, Layout::rand).values;
  w.dim.resize(d);
  std::mt19937_64 rng(seed ^ 0xd1aull);
  for (auto& v : w.dim) v = static_cast<std::uint32_t>(rng());
  w.index = rebuild(w.fact, d);
  w.fact_recoded = recode_fact(w.fact, w.index);
  w.dim_permuted = permute_dimension(w.dim, w.index);
  return w;
}

// Independent top-k oracle: count with a plain map-free histogram, then sort.
std::vector<std::pair<std::uint32_t, std::uint64_t>> brute_force_top_k(
    const Column& fact, std::uint32_t d, std::uint32_t k) {
  std::vector<std::uint64_t> counts(d, 0);
  for (const std::uint32_t id : fact) ++counts[id - 1];
  std::vector<std::pair<std::uint32_t, std::uint64_t>> all;
  for (std::uint32_t i = 0; i < d; ++i) all.emplace_back(i + 1, counts[i]);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  all.resize(std::min<std::size_t>(k, all.size()));
  return all;
}

}  // namespace

TEST_CASE("materialize dereferences foreign keys") {
  const auto w = make_workload(8, 64, 1.0, 3);
  // recoded identifiers 1..3 address the permuted dimension's first rows
  const Column out = materialize(Column{1, 2, 3}, w.dim_permuted);
  CHECK(out == Column{w.dim_permuted[0], w.dim_permuted[1], w.dim_permuted[2]});

  CHECK(materialize(Column{}, w.dim).empty());
  CHECK_THROWS_AS(materialize(Column{9}, w.dim), DomainViolation);
  CHECK_THROWS_AS(materialize(Column{0}, w.dim), DomainViolation);
}

TEST_CASE("materialize is invariant under recode plus permute") {
  for (const double z : {0.0, 1.0, 2.0}) {
    const auto w = make_workload(211, 5000, z, 17);
    CHECK(materialize(w.fact, w.dim) == materialize(w.fact_recoded, w.dim_permuted));
  }
}

TEST_CASE("materialize_split equals materialize for any threshold") {
  const auto w = make_workload(300, 8000, 1.2, 5);
  const Column expected = materialize(w.fact_recoded, w.dim_permuted);
  for (const std::uint32_t t : {1u, 2u, 10u, 150u, 299u, 300u}) {
    CHECK(materialize_split(w.fact_recoded, w.dim_permuted, {t}) == expected);
  }
}

TEST_CASE("materialize_split with t equal to D never defers") {
  const auto w = make_workload(50, 500, 0.5, 9);
  CHECK(materialize_split(w.fact_recoded, w.dim_permuted, {50}) ==
        materialize(w.fact_recoded, w.dim_permuted));
}

TEST_CASE("materialize_split rejects a zero threshold") {
  const auto w = make_workload(10, 20, 1.0, 1);
  CHECK_THROWS_AS(materialize_split(w.fact, w.dim, {0}), InvalidArgument);
  CHECK_THROWS_AS(materialize_split(w.fact, w.dim, {11}), InvalidArgument);
}

TEST_CASE("build_bitmap evaluates the predicate per row") {
  const Column values{50, 150, 99};
  const Bitmap bm = build_bitmap(values, [](std::uint32_t v) { return v < 100; });
  CHECK(bm.test(0));
  CHECK(!bm.test(1));
  CHECK(bm.test(2));
  CHECK(bm.count() == 2);

  const Bitmap all = build_bitmap(values, [](std::uint32_t) { return true; });
  CHECK(all.count() == 3);

  const Bitmap empty = build_bitmap(Column{}, [](std::uint32_t) { return true; });
  CHECK(empty.size() == 0);
}

TEST_CASE("select emits ascending offsets of matching rows") {
  Bitmap bm(3);
  bm.set(2);  // identifier 3
  CHECK(select(Column{3, 1, 3, 2}, bm) == std::vector<std::uint32_t>{0, 2});

  const Bitmap none(3);
  CHECK(select(Column{3, 1, 3, 2}, none).empty());

  Bitmap all(3);
  for (std::uint64_t i = 0; i < 3; ++i) all.set(i);
  CHECK(select(Column{3, 1, 3, 2}, all) == std::vector<std::uint32_t>{0, 1, 2, 3});

  CHECK_THROWS_AS(select(Column{4}, bm), DomainViolation);
}

TEST_CASE("select output is strictly increasing and duplicate free") {
  const auto w = make_workload(777, 20'000, 1.0, 23);
  std::mt19937_64 rng(7);
  Bitmap bm(w.d);
  for (std::uint64_t i = 0; i < w.d; ++i) {
    if (rng() & 1) bm.set(i);
  }
  const auto offsets = select(w.fact, bm);
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    CHECK(offsets[i] < offsets[i + 1]);
  }
  // cross-check against a straightforward scan
  std::vector<std::uint32_t> expected;
  for (std::uint32_t k = 0; k < w.fact.size(); ++k) {
    if (bm.test(w.fact[k] - 1)) expected.push_back(k);
  }
  CHECK(offsets == expected);
}

TEST_CASE("select is invariant under recode plus bitmap permute") {
  const auto w = make_workload(400, 9000, 1.5, 31);
  std::mt19937_64 rng(8);
  Bitmap bm(w.d);
  for (std::uint64_t i = 0; i < w.d; ++i) {
    if (rng() % 3 == 0) bm.set(i);
  }
  const Bitmap bm_permuted = permute_bitmap(bm, w.index);
  CHECK(select(w.fact, bm) == select(w.fact_recoded, bm_permuted));
}

TEST_CASE("aggregate_count matches count_frequencies") {
  const Column fact{5, 1, 5, 8, 5, 1};
  const auto counts = aggregate_count(fact, 8);
  CHECK(counts[4] == 3);
  CHECK(counts[0] == 2);
  CHECK(counts[7] == 1);
  CHECK(counts[1] == 0);

  CHECK(aggregate_count(Column{}, 4) == std::vector<std::uint64_t>(4, 0));

  const auto w = make_workload(123, 4567, 0.9, 41);
  CHECK(aggregate_count(w.fact, w.d) == count_frequencies(w.fact, w.d).counts);
}

TEST_CASE("aggregate_sum groups a measure column") {
  const Column fact{2, 1, 2};
  const Column measure{10, 5, 7};
  CHECK(aggregate_sum(fact, measure, 3) == std::vector<std::uint64_t>{5, 17, 0});
  CHECK_THROWS_AS(aggregate_sum(fact, Column{1}, 3), InvalidArgument);
}

TEST_CASE("aggregate_count_lanecopy equals plain aggregation") {
  const auto w = make_workload(500, 20'000, 1.5, 53);
  const auto expected = aggregate_count(w.fact_recoded, w.d);
  SUBCASE("defaults") {
    CHECK(aggregate_count_lanecopy(w.fact_recoded, w.d, 40, 16) == expected);
  }
  SUBCASE("hot region covering the whole domain") {
    CHECK(aggregate_count_lanecopy(w.fact_recoded, w.d, w.d, 16) == expected);
  }
  SUBCASE("single lane") {
    CHECK(aggregate_count_lanecopy(w.fact_recoded, w.d, 40, 1) == expected);
  }
  SUBCASE("lane count not dividing the row count") {
    CHECK(aggregate_count_lanecopy(w.fact_recoded, w.d, 7, 13) == expected);
  }
}

TEST_CASE("AggState finalize folds and zeroes the hot region") {
  AggState state(10, 4, 3);
  state.hot[0 * 4 + 2] = 5;   // lane 0, rank 3
  state.hot[2 * 4 + 2] = 7;   // lane 2, rank 3
  state.main[2] = 1;
  state.finalize();
  CHECK(state.main[2] == 13);
  CHECK(std::all_of(state.hot.begin(), state.hot.end(),
                    [](std::uint64_t v) { return v == 0; }));
}

TEST_CASE("heavy_hitter_count on a recoded column") {
  const Column fact{1, 1, 2, 3, 1, 2};
  const auto hh = heavy_hitter_count(fact, 3, 2);
  REQUIRE(hh.top.size() == 2);
  CHECK(hh.top[0] == std::pair<std::uint32_t, std::uint64_t>{1, 3});
  CHECK(hh.top[1] == std::pair<std::uint32_t, std::uint64_t>{2, 2});
  CHECK(!hh.clamped);
}

TEST_CASE("heavy_hitter_count clamps k to the domain") {
  const Column fact{1, 2, 1};
  const auto hh = heavy_hitter_count(fact, 2, 5);
  CHECK(hh.clamped);
  REQUIRE(hh.top.size() == 2);
  CHECK(hh.top[0].first == 1);
}

TEST_CASE("heavy_hitter_count with k equal to D is a full sorted aggregate") {
  const auto w = make_workload(97, 3000, 1.1, 67);
  const auto hh = heavy_hitter_count(w.fact_recoded, w.d, w.d);
  CHECK(hh.top == brute_force_top_k(w.fact_recoded, w.d, w.d));
}

TEST_CASE("heavy hitters match brute force on skewed recoded data") {
  for (const double z : {0.3, 1.0, 2.0}) {
    const auto w = make_workload(5000, 60'000, z, 71);
    for (const std::uint32_t k : {1u, 13u, 400u, 4000u}) {
      const auto expected = brute_force_top_k(w.fact_recoded, w.d, k);
      CHECK(heavy_hitter_count(w.fact_recoded, w.d, k).top == expected);
      CHECK(heavy_hitter_count(w.fact_recoded, w.d, k, /*branchy=*/true).top == expected);
      CHECK(top_k_by_full_aggregation(w.fact_recoded, w.d, k).top == expected);
    }
  }
}

TEST_CASE("permutation equivalence holds across all operators") {
  std::mt19937_64 rng(2025);
  for (int round = 0; round < 25; ++round) {
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 2000);
    const std::uint64_t n = 1 + rng() % 20'000;
    const double z = static_cast<double>(rng() % 250) / 100.0;
    const auto w = make_workload(d, n, z, rng());

    CHECK(materialize(w.fact, w.dim) == materialize(w.fact_recoded, w.dim_permuted));

    Bitmap bm(d);
    for (std::uint64_t i = 0; i < d; ++i) {
      if (rng() & 1) bm.set(i);
    }
    CHECK(select(w.fact, bm) == select(w.fact_recoded, permute_bitmap(bm, w.index)));

    // counts in rank space map back through offsets
    const auto counts = aggregate_count(w.fact, d);
    const auto counts_recoded = aggregate_count(w.fact_recoded, d);
    bool match = true;
    for (std::uint32_t r = 0; r < d && match; ++r) {
      match = counts_recoded[r] == counts[w.index.offsets[r] - 1];
    }
    CHECK(match);
  }
}
