// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/column.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "skewdx/error.hpp"
#include "skewdx/mix.hpp"

namespace skewdx {

const char* to_string(Layout layout) noexcept {
  return layout == Layout::rand ? "rand" : "freq";
}

namespace {

void validate(const ZipfSpec& spec) {
  if (spec.domain_cardinality == 0) {
    throw InvalidArgument("zipf spec: domain cardinality must be at least 1");
  }
  if (spec.domain_cardinality > kMaxDomainCardinality) {
    throw InvalidArgument("zipf spec: domain cardinality exceeds the 32-bit identifier space");
  }
  if (spec.tuple_count == 0) {
    throw InvalidArgument("zipf spec: tuple count must be at least 1");
  }
  if (!(spec.z >= 0.0)) {
    throw InvalidArgument("zipf spec: exponent must be non-negative");
  }
}

// 53-bit uniform in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> zipf_frequencies(const ZipfSpec& spec) {
  validate(spec);
  const std::uint32_t d = spec.domain_cardinality;
  std::vector<double> freqs(d);
  // Kahan summation keeps the normalizer stable for very large domains.
  double sum = 0.0, carry = 0.0;
  for (std::uint32_t r = 1; r <= d; ++r) {
    const double w = std::pow(static_cast<double>(r), -spec.z);
    freqs[r - 1] = w;
    const double y = w - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  for (double& f : freqs) f /= sum;
  return freqs;
}

std::vector<std::uint32_t> random_bijection(std::uint32_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> map(n);
  std::iota(map.begin(), map.end(), 1u);
  std::mt19937_64 rng(seed);
  for (std::uint32_t i = n; i > 1; --i) {
    const std::uint32_t j = static_cast<std::uint32_t>(rng() % i);
    std::swap(map[i - 1], map[j]);
  }
  return map;
}

GeneratedColumn generate_fact_column(const ZipfSpec& spec, Layout layout) {
  validate(spec);
  const std::uint32_t d = spec.domain_cardinality;

  std::vector<double> cdf = zipf_frequencies(spec);
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  cdf.back() = 1.0;

  // Draw distribution ranks i.i.d.; the layout then decides how ranks map to
  // stored identifiers. Drawing and layout assignment use decoupled seed
  // streams so the `rand` bijection can be reproduced independently (see
  // line_frequencies).
  std::vector<std::uint32_t> drawn(spec.tuple_count);
  std::vector<std::uint64_t> rank_counts(d, 0);
  std::mt19937_64 rng(splitmix64(spec.seed ^ 0x5ca1ab1eull));
  for (std::uint64_t k = 0; k < spec.tuple_count; ++k) {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint32_t rank = static_cast<std::uint32_t>(it - cdf.begin());
    if (rank >= d) rank = d - 1;  // guards the u ~ 1.0 boundary
    drawn[k] = rank;
    ++rank_counts[rank];
  }

  // freq: identifier 1 is the empirically most frequent item, exactly as if
  // the column had been recoded through an index built from itself (ties by
  // ascending distribution rank). rand: a seeded bijection scatters the
  // identifiers.
  std::vector<std::uint32_t> rank_to_id(d);
  if (layout == Layout::rand) {
    rank_to_id = random_bijection(d, spec.seed);
  } else {
    std::vector<std::uint32_t> by_count(d);
    std::iota(by_count.begin(), by_count.end(), 0u);
    std::sort(by_count.begin(), by_count.end(),
              [&rank_counts](std::uint32_t a, std::uint32_t b) {
                return rank_counts[a] != rank_counts[b] ? rank_counts[a] > rank_counts[b]
                                                        : a < b;
              });
    for (std::uint32_t pos = 0; pos < d; ++pos) rank_to_id[by_count[pos]] = pos + 1;
  }

  GeneratedColumn result;
  result.values.resize(spec.tuple_count);
  result.ground_truth_counts.assign(d, 0);
  for (std::uint64_t k = 0; k < spec.tuple_count; ++k) {
    result.values[k] = rank_to_id[drawn[k]];
  }
  for (std::uint32_t r = 0; r < d; ++r) {
    result.ground_truth_counts[rank_to_id[r] - 1] = rank_counts[r];
  }
  return result;
}

}  // namespace skewdx
