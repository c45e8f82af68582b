// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "skewdx/column.hpp"

namespace skewdx {

struct FrequencyProfile {
  std::vector<std::uint64_t> counts;  ///< indexed by identifier - 1, length D
  std::uint64_t total = 0;            ///< sum of counts
};

/// A pair of mutually inverse bijections on 1..D. `offsets[r-1]` is the
/// original identifier holding frequency rank r (most frequent first, ties by
/// ascending identifier); `ranks[id-1]` is the rank of identifier id. Both
/// directions are stored explicitly so lookups either way are O(1).
struct PermutationIndex {
  std::vector<std::uint32_t> offsets;  ///< rank -> identifier
  std::vector<std::uint32_t> ranks;    ///< identifier -> rank

  std::uint32_t domain_cardinality() const noexcept {
    return static_cast<std::uint32_t>(offsets.size());
  }
};

/// Per-identifier occurrence counts of `fact` over the domain 1..D.
/// Throws DomainViolation naming the first offending row.
FrequencyProfile count_frequencies(const Column& fact, std::uint32_t domain_cardinality);

/// Sorts identifiers by (count descending, identifier ascending) and derives
/// the inverse mapping. Identifiers with zero count receive trailing ranks so
/// the result is a total bijection on 1..D.
PermutationIndex build_index(const FrequencyProfile& profile);

/// Rewrites foreign-key values to their ranks: out[k] = ranks[fact[k]].
Column recode_fact(const Column& fact, const PermutationIndex& index);

/// Reorders a dimension column so rank r's row lands at position r:
/// out[r] = dim[offsets[r]]. Popular rows end up at adjacent low addresses.
Column permute_dimension(const Column& dim, const PermutationIndex& index);

/// Registers one new dimension row as the least-frequent item: the new
/// identifier is D+1 with rank D+1; existing mappings are untouched.
/// Returns the new identifier.
std::uint32_t append_dimension_row(PermutationIndex& index);

/// count_frequencies followed by build_index.
PermutationIndex rebuild(const Column& fact, std::uint32_t domain_cardinality);

// Index file: magic "SKPI" | version u32 = 1 | D u64 | offsets | ranks
// (both arrays D x u32 little-endian). read_index verifies the bijection.
void write_index(const std::filesystem::path& path, const PermutationIndex& index);
PermutationIndex read_index(const std::filesystem::path& path);

}  // namespace skewdx
