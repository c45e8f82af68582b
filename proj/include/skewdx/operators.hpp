// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skewdx/column.hpp"
#include "skewdx/permindex.hpp"

namespace skewdx {

/// Packed predicate bits over a dimension domain; bit i corresponds to the
/// dimension row with identifier i + 1.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::uint64_t size)
      : words_((size + 63) / 64, 0), size_(size) {}

  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t count() const noexcept;
  const std::uint64_t* words() const noexcept { return words_.data(); }

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

template <typename Pred>
Bitmap build_bitmap(const Column& dim_values, Pred&& pred) {
  Bitmap bm(dim_values.size());
  for (std::size_t i = 0; i < dim_values.size(); ++i) {
    if (pred(dim_values[i])) bm.set(i);
  }
  return bm;
}

/// Reorders predicate bits into rank space: out bit r is the input bit of the
/// identifier holding rank r + 1.
Bitmap permute_bitmap(const Bitmap& bitmap, const PermutationIndex& index);

/// Rank cutoff separating likely-cached identifiers (<= t) from the rest.
struct SplitThreshold {
  std::uint32_t t = 1;
};

/// Returns the row of the first fact value outside 1..D, or npos if none.
std::size_t find_domain_violation(const Column& fact, std::uint64_t domain_cardinality) noexcept;
inline constexpr std::size_t knpos = static_cast<std::size_t>(-1);

/// Q1: out[k] = dim[fact[k]], dereferencing each foreign key into the
/// dimension column.
Column materialize(const Column& fact, const Column& dim, int prefetch_distance = 0);

/// Q1 with the access stream split on a rank threshold: identifiers <= t are
/// resolved in a first pass, the likely misses are buffered and resolved
/// together in a second pass. Output equals materialize exactly; `fact` must
/// be a recoded column for the threshold to mean anything.
Column materialize_split(const Column& fact, const Column& dim, SplitThreshold threshold);

/// Q2: ascending 0-based fact row offsets whose referenced bit is set.
std::vector<std::uint32_t> select(const Column& fact, const Bitmap& bitmap);

/// Q3: counts[i] = occurrences of identifier i + 1.
std::vector<std::uint64_t> aggregate_count(const Column& fact, std::uint32_t domain_cardinality);

/// Q3 over a measure column: sums[i] = sum of measure[k] where fact[k] = i+1.
std::vector<std::uint64_t> aggregate_sum(const Column& fact, const Column& measure,
                                         std::uint32_t domain_cardinality);

/// Accumulators with a lane-replicated hot region. Lane l's copy of the
/// rank-r slot (r <= hot_threshold) lives at hot[l * hot_threshold + r - 1].
struct AggState {
  AggState(std::uint32_t domain_cardinality, std::uint32_t hot_threshold,
           std::uint32_t lanes);

  /// Folds every lane copy into main and zeroes the hot region.
  void finalize();

  std::vector<std::uint64_t> main;
  std::vector<std::uint64_t> hot;
  std::uint32_t hot_threshold = 0;
  std::uint32_t lanes = 0;
};

/// Q3 with per-lane copies of the top-t accumulators: position k updates lane
/// k mod L, so concurrent-lane updates of popular ranks never collide.
/// Requires a recoded fact column; result equals aggregate_count exactly.
std::vector<std::uint64_t> aggregate_count_lanecopy(const Column& fact,
                                                    std::uint32_t domain_cardinality,
                                                    std::uint32_t hot_threshold,
                                                    std::uint32_t lanes);

struct HeavyHitters {
  /// (identifier, count), ordered by count descending then identifier
  /// ascending.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> top;
  /// k exceeded D and was clamped.
  bool clamped = false;
};

/// Q3a: exact counts of identifiers 1..k of a recoded column, touching an
/// accumulator array of exactly k entries. The branch-free form clamps the
/// slot index and adds the comparison mask; `branchy` switches to an explicit
/// if, which is faster on some cores at extreme skew.
HeavyHitters heavy_hitter_count(const Column& fact, std::uint32_t domain_cardinality,
                                std::uint32_t k, bool branchy = false);

/// Reference top-k by full aggregation and partial sort; the conventional
/// baseline for Q3a and the verification path for drifted indexes.
HeavyHitters top_k_by_full_aggregation(const Column& fact,
                                       std::uint32_t domain_cardinality,
                                       std::uint32_t k);

}  // namespace skewdx
