// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skewdx/column.hpp"
#include "skewdx/operators.hpp"

namespace skewdx {

enum class AggStrategy {
  independent,    ///< one full-size private array per thread, folded at the end
  shared_atomic,  ///< one shared array, atomic read-modify-write increments
  hybrid,         ///< private arrays for hot ranks, shared atomics for the tail
};

const char* to_string(AggStrategy strategy) noexcept;

struct ParallelPlan {
  unsigned threads = 1;
  AggStrategy strategy = AggStrategy::independent;
  /// Hybrid only: identifiers <= hot_threshold use the private buffers.
  std::uint32_t hot_threshold = 8192;
  /// Best-effort affinity hint; never affects results.
  bool pin_threads = false;
};

/// Contiguous near-equal spans [begin, end) covering 0..n. Spans may be empty
/// when threads exceed rows.
std::vector<std::pair<std::size_t, std::size_t>> chunk_spans(std::size_t n, unsigned threads);

/// Chunked materialize; each thread writes only its own output span, so the
/// result is bit-identical to the sequential operator.
Column parallel_materialize(const Column& fact, const Column& dim, const ParallelPlan& plan);

/// Chunked select; per-thread results concatenated in chunk order preserve
/// the global ascending offset order.
std::vector<std::uint32_t> parallel_select(const Column& fact, const Bitmap& bitmap,
                                           const ParallelPlan& plan);

struct AggMetrics {
  std::uint64_t total_updates = 0;
  std::uint64_t shared_updates = 0;   ///< updates that took the shared-atomic path
  std::uint64_t accumulator_bytes = 0;
};

/// Grouped count under the plan's strategy. Results equal the sequential
/// aggregate exactly for every strategy and thread count. Hybrid requires a
/// recoded column so the hot identifiers are 1..hot_threshold.
std::vector<std::uint64_t> parallel_aggregate(const Column& fact,
                                              std::uint32_t domain_cardinality,
                                              const ParallelPlan& plan,
                                              AggMetrics* metrics = nullptr);

/// Accumulator bytes a strategy commits to: independent T*D*8, shared_atomic
/// D*8, hybrid D*8 + T*h*8.
std::uint64_t memory_footprint(const ParallelPlan& plan, std::uint64_t domain_cardinality);

}  // namespace skewdx
