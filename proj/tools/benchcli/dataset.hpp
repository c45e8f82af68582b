// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "skewdx/column.hpp"
#include "skewdx/operators.hpp"
#include "skewdx/permindex.hpp"

namespace skewdx::cli {

// A benchmark workload carried in both layouts. The `rand` side is the
// baseline organization; the `freq` side is derived from it through the
// permutation index (recode + permute), so every query must produce
// equivalent results on either side.
struct BenchDataset {
  std::uint32_t domain_cardinality = 0;
  std::uint64_t tuple_count = 0;
  PermutationIndex index;
  Column fact_rand;
  Column fact_freq;
  Column dim_rand;
  Column dim_freq;
  Bitmap bitmap_rand;
  Bitmap bitmap_freq;

  const Column& fact(Layout layout) const {
    return layout == Layout::rand ? fact_rand : fact_freq;
  }
  const Column& dim(Layout layout) const {
    return layout == Layout::rand ? dim_rand : dim_freq;
  }
  const Bitmap& bitmap(Layout layout) const {
    return layout == Layout::rand ? bitmap_rand : bitmap_freq;
  }
};

/// Seeded per-row predicate bitmap with the given pass fraction.
Bitmap random_bitmap(std::uint64_t size, double selectivity, std::uint64_t seed);

/// Synthetic dataset: rand-layout Zipf column plus its freq-side derivation.
BenchDataset make_synthetic_dataset(const ZipfSpec& spec, double selectivity);

/// File-backed dataset. The fact column is treated as the baseline (rand)
/// organization; the index (loaded or rebuilt) derives the freq side.
/// domain_cardinality 0 means "largest identifier in the column".
BenchDataset load_dataset(const std::filesystem::path& fact_path,
                          const std::optional<std::filesystem::path>& index_path,
                          std::uint32_t domain_cardinality, double selectivity,
                          std::uint64_t seed);

}  // namespace skewdx::cli
