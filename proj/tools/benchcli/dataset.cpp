// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "dataset.hpp"

#include <algorithm>
#include <random>

#include "skewdx/column_io.hpp"
#include "skewdx/error.hpp"
#include "skewdx/mix.hpp"

namespace skewdx::cli {

Bitmap random_bitmap(std::uint64_t size, double selectivity, std::uint64_t seed) {
  if (!(selectivity >= 0.0 && selectivity <= 1.0)) {
    throw InvalidArgument("selectivity must lie in [0, 1]");
  }
  Bitmap bm(size);
  std::mt19937_64 rng(splitmix64(seed ^ 0xb17a5ull));
  for (std::uint64_t i = 0; i < size; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < selectivity) bm.set(i);
  }
  return bm;
}

namespace {

void finish_dataset(BenchDataset& ds, double selectivity, std::uint64_t seed) {
  const std::uint32_t d = ds.domain_cardinality;
  ds.index = rebuild(ds.fact_rand, d);
  ds.fact_freq = recode_fact(ds.fact_rand, ds.index);

  ds.dim_rand.resize(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    ds.dim_rand[i] = static_cast<std::uint32_t>(splitmix64(seed ^ (0xd1000000ull + i)));
  }
  ds.dim_freq = permute_dimension(ds.dim_rand, ds.index);

  ds.bitmap_rand = random_bitmap(d, selectivity, seed);
  ds.bitmap_freq = permute_bitmap(ds.bitmap_rand, ds.index);
}

}  // namespace

BenchDataset make_synthetic_dataset(const ZipfSpec& spec, double selectivity) {
  BenchDataset ds;
  ds.domain_cardinality = spec.domain_cardinality;
  ds.tuple_count = spec.tuple_count;
  ds.fact_rand = generate_fact_column(spec, Layout::rand).values;
  finish_dataset(ds, selectivity, spec.seed);
  return ds;
}

BenchDataset load_dataset(const std::filesystem::path& fact_path,
                          const std::optional<std::filesystem::path>& index_path,
                          std::uint32_t domain_cardinality, double selectivity,
                          std::uint64_t seed) {
  BenchDataset ds;
  ds.fact_rand = read_column(fact_path);
  if (ds.fact_rand.empty()) throw FormatError("fact column is empty: " + fact_path.string());
  ds.tuple_count = ds.fact_rand.size();

  if (domain_cardinality == 0) {
    domain_cardinality = *std::max_element(ds.fact_rand.begin(), ds.fact_rand.end());
  }
  ds.domain_cardinality = domain_cardinality;

  if (index_path) {
    // honor a prebuilt index instead of deriving one from the data
    PermutationIndex index = read_index(*index_path);
    if (index.domain_cardinality() != domain_cardinality) {
      throw InvalidArgument("index cardinality does not match the fact domain");
    }
    ds.index = std::move(index);
    ds.fact_freq = recode_fact(ds.fact_rand, ds.index);
    const std::uint32_t d = domain_cardinality;
    ds.dim_rand.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      ds.dim_rand[i] = static_cast<std::uint32_t>(splitmix64(seed ^ (0xd1000000ull + i)));
    }
    ds.dim_freq = permute_dimension(ds.dim_rand, ds.index);
    ds.bitmap_rand = random_bitmap(d, selectivity, seed);
    ds.bitmap_freq = permute_bitmap(ds.bitmap_rand, ds.index);
    return ds;
  }

  finish_dataset(ds, selectivity, seed);
  return ds;
}

}  // namespace skewdx::cli
