// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skewdx/column.hpp"

namespace skewdx {

struct CacheGeometry {
  std::uint64_t lines = 1;          ///< S, capacity in cache lines
  std::uint32_t line_bytes = 64;
  std::uint32_t element_bytes = 4;

  std::uint32_t elements_per_line() const noexcept {
    return line_bytes / element_bytes;
  }
};

void validate(const CacheGeometry& geometry);

/// Aggregates per-rank value frequencies into per-cache-line access
/// frequencies. Under `freq` layout line i sums the ranks it covers; under
/// `rand` the values are first scattered by a seeded bijection, so the result
/// approximates the line distribution of the randomized layout.
std::vector<double> line_frequencies(std::span<const double> value_freqs,
                                     Layout layout,
                                     const CacheGeometry& geometry,
                                     std::uint64_t seed);

/// Analytical LRU hit-rate estimate for an access stream with independent
/// per-line frequencies f. For each line, the number of trials until its next
/// reference is modeled as geometric; a trial horizon K is found (binary
/// search, K >= S) at which the expected number of distinct lines
/// d(K) = K - sum_{j!=i} max(0, n_j - 1),  n_j = K * f_j / (1 - f_i)
/// reaches the cache capacity S. The per-line hit probability is then the
/// geometric CDF 1 - (1 - f_i)^K and the estimate is sum_i f_i * cdf_i.
/// Returns 1.0 outright when at most S lines have nonzero frequency.
double estimate_hit_rate(std::span<const double> line_freqs, std::uint64_t cache_lines);

struct LruStats {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t distinct_lines = 0;

  /// Plain measured rate; first touch of a line counts as a miss.
  double hit_rate() const noexcept {
    return accesses == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(accesses);
  }

  /// Rate with the unavoidable cache-filling cold misses (first touches of
  /// the first min(distinct, S) lines) discarded, comparable to the
  /// steady-state analytical estimate.
  double steady_hit_rate(std::uint64_t cache_lines) const noexcept {
    const std::uint64_t fill = distinct_lines < cache_lines ? distinct_lines : cache_lines;
    const std::uint64_t denom = accesses - fill;
    return denom == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(denom);
  }
};

/// Exact fully-associative LRU simulation over a trace of dense line ids.
LruStats simulate_lru(std::span<const std::uint32_t> trace, std::uint64_t cache_lines);

/// Maps 1-based identifiers to 0-based cache line ids:
/// line = (id - 1) / elements_per_line.
std::vector<std::uint32_t> trace_from_column(const Column& fact,
                                             const CacheGeometry& geometry);

}  // namespace skewdx
