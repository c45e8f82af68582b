// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace skewdx {

/// A dense in-memory column of 32-bit unsigned values. Foreign-key columns
/// store 1-based identifiers into a dimension domain of cardinality D;
/// identifier 0 is reserved and never valid.
using Column = std::vector<std::uint32_t>;

/// Identifier cap: 32-bit identifiers with 0 reserved.
inline constexpr std::uint32_t kMaxDomainCardinality = 0xFFFFFFFEu;

enum class Layout {
  rand,  ///< identifiers assigned to ranks by a seeded random bijection
  freq,  ///< identifier r is the empirically r-th most frequent item
};

const char* to_string(Layout layout) noexcept;

/// Parameters of a synthetic skewed foreign-key column. Item of rank r is
/// drawn with probability proportional to r^(-z); z = 0 is uniform.
struct ZipfSpec {
  std::uint32_t domain_cardinality = 1;  ///< D, identifiers 1..D
  std::uint64_t tuple_count = 1;         ///< N
  double z = 0.0;                        ///< skew exponent, >= 0
  std::uint64_t seed = 0;
};

/// Normalized rank frequencies p[r-1] = r^(-z) / sum(s^(-z)), length D,
/// non-increasing, summing to 1.
std::vector<double> zipf_frequencies(const ZipfSpec& spec);

/// Seeded Fisher-Yates bijection on 1..n; out[r-1] is the identifier assigned
/// to rank r. The same (n, seed) pair always yields the same mapping, which
/// lets workload generation and cache-line frequency estimation agree on the
/// `rand` layout.
std::vector<std::uint32_t> random_bijection(std::uint32_t n, std::uint64_t seed);

struct GeneratedColumn {
  Column values;
  /// Exact per-identifier occurrence counts, indexed by identifier - 1.
  std::vector<std::uint64_t> ground_truth_counts;
};

/// Draws N identifiers i.i.d. from the Zipf distribution via inverse-CDF
/// lookup. Deterministic under (spec, layout): equal seeds are bit-identical.
GeneratedColumn generate_fact_column(const ZipfSpec& spec, Layout layout);

}  // namespace skewdx
