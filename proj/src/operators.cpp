// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/operators.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "skewdx/error.hpp"
#include "skewdx/kernels.hpp"

namespace skewdx {

std::uint64_t Bitmap::count() const noexcept {
  std::uint64_t n = 0;
  for (const std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

Bitmap permute_bitmap(const Bitmap& bitmap, const PermutationIndex& index) {
  if (bitmap.size() != index.offsets.size()) {
    throw InvalidArgument("bitmap size does not match index cardinality");
  }
  Bitmap out(bitmap.size());
  for (std::uint64_t r = 0; r < bitmap.size(); ++r) {
    if (bitmap.test(index.offsets[r] - 1)) out.set(r);
  }
  return out;
}

std::size_t find_domain_violation(const Column& fact, std::uint64_t domain_cardinality) noexcept {
  // (v - 1) wraps for v == 0, so one unsigned compare catches both ends.
  std::uint32_t worst = 0;
  for (const std::uint32_t v : fact) worst = std::max(worst, v - 1);
  if (worst < domain_cardinality) return knpos;
  for (std::size_t k = 0; k < fact.size(); ++k) {
    if (fact[k] - 1 >= domain_cardinality) return k;
  }
  return knpos;
}

namespace {

void require_in_domain(const Column& fact, std::uint64_t domain_cardinality) {
  const std::size_t row = find_domain_violation(fact, domain_cardinality);
  if (row != knpos) throw DomainViolation(row, fact[row], domain_cardinality);
}

// AVX2 gathers index with signed 32-bit lanes.
const kernels::KernelTable& kernels_for(std::size_t dim_len) {
  if (dim_len > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    return kernels::scalar_kernels();
  }
  return kernels::active_kernels();
}

}  // namespace

Column materialize(const Column& fact, const Column& dim, int prefetch_distance) {
  require_in_domain(fact, dim.size());
  Column out(fact.size());
  kernels_for(dim.size())
      .gather_u32(fact.data(), fact.size(), dim.data(), out.data(), prefetch_distance);
  return out;
}

Column materialize_split(const Column& fact, const Column& dim, SplitThreshold threshold) {
  if (threshold.t == 0 || threshold.t > dim.size()) {
    throw InvalidArgument("split threshold must lie in 1..D");
  }
  require_in_domain(fact, dim.size());

  Column out(fact.size());
  std::vector<std::uint32_t> miss_pos(fact.size());
  std::vector<std::uint32_t> miss_id(fact.size());
  const std::size_t misses = kernels_for(dim.size())
                                 .gather_split_pass1(fact.data(), fact.size(), dim.data(),
                                                     threshold.t, out.data(),
                                                     miss_pos.data(), miss_id.data());
  for (std::size_t i = 0; i < misses; ++i) {
    out[miss_pos[i]] = dim[miss_id[i] - 1];
  }
  return out;
}

std::vector<std::uint32_t> select(const Column& fact, const Bitmap& bitmap) {
  if (fact.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("select: fact row offsets exceed 32 bits");
  }
  require_in_domain(fact, bitmap.size());
  std::vector<std::uint32_t> out(fact.size());
  const std::size_t count =
      kernels_for(bitmap.size())
          .select_offsets(fact.data(), fact.size(), bitmap.words(), 0, out.data());
  out.resize(count);
  return out;
}

std::vector<std::uint64_t> aggregate_count(const Column& fact, std::uint32_t domain_cardinality) {
  require_in_domain(fact, domain_cardinality);
  std::vector<std::uint64_t> counts(domain_cardinality, 0);
  for (const std::uint32_t id : fact) ++counts[id - 1];
  return counts;
}

std::vector<std::uint64_t> aggregate_sum(const Column& fact, const Column& measure,
                                         std::uint32_t domain_cardinality) {
  if (measure.size() != fact.size()) {
    throw InvalidArgument("aggregate_sum: measure length does not match fact length");
  }
  require_in_domain(fact, domain_cardinality);
  std::vector<std::uint64_t> sums(domain_cardinality, 0);
  for (std::size_t k = 0; k < fact.size(); ++k) {
    sums[fact[k] - 1] += measure[k];
  }
  return sums;
}

AggState::AggState(std::uint32_t domain_cardinality, std::uint32_t hot_threshold_,
                   std::uint32_t lanes_)
    : main(domain_cardinality, 0),
      hot(static_cast<std::size_t>(hot_threshold_) * lanes_, 0),
      hot_threshold(hot_threshold_),
      lanes(lanes_) {
  if (hot_threshold == 0 || hot_threshold > domain_cardinality) {
    throw InvalidArgument("lane-copy hot threshold must lie in 1..D");
  }
  if (lanes == 0) throw InvalidArgument("lane count must be at least 1");
}

void AggState::finalize() {
  for (std::uint32_t lane = 0; lane < lanes; ++lane) {
    const std::size_t off = static_cast<std::size_t>(lane) * hot_threshold;
    for (std::uint32_t r = 0; r < hot_threshold; ++r) {
      main[r] += hot[off + r];
    }
  }
  std::fill(hot.begin(), hot.end(), 0);
}

std::vector<std::uint64_t> aggregate_count_lanecopy(const Column& fact,
                                                    std::uint32_t domain_cardinality,
                                                    std::uint32_t hot_threshold,
                                                    std::uint32_t lanes) {
  require_in_domain(fact, domain_cardinality);
  AggState state(domain_cardinality, hot_threshold, lanes);

  // Strip-mined over groups of `lanes` positions; lane l owns its own copy of
  // every hot slot, so within a group the hot updates target disjoint
  // addresses.
  const std::size_t n = fact.size();
  const std::size_t t = hot_threshold;
  for (std::size_t base = 0; base < n; base += lanes) {
    const std::size_t group = std::min<std::size_t>(lanes, n - base);
    for (std::size_t lane = 0; lane < group; ++lane) {
      const std::uint32_t id = fact[base + lane];
      std::uint64_t* slot = id <= hot_threshold ? &state.hot[lane * t + (id - 1)]
                                                : &state.main[id - 1];
      ++*slot;
    }
  }
  state.finalize();
  return std::move(state.main);
}

namespace {

HeavyHitters order_heavy_hitters(std::vector<std::uint64_t> counts, bool clamped) {
  HeavyHitters result;
  result.clamped = clamped;
  result.top.reserve(counts.size());
  for (std::uint32_t i = 0; i < counts.size(); ++i) {
    result.top.emplace_back(i + 1, counts[i]);
  }
  std::sort(result.top.begin(), result.top.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return result;
}

}  // namespace

HeavyHitters heavy_hitter_count(const Column& fact, std::uint32_t domain_cardinality,
                                std::uint32_t k, bool branchy) {
  if (k == 0) throw InvalidArgument("heavy_hitter_count: k must be at least 1");
  require_in_domain(fact, domain_cardinality);
  const std::uint32_t cutoff = std::min(k, domain_cardinality);

  std::vector<std::uint64_t> counts(cutoff, 0);
  if (branchy) {
    for (const std::uint32_t id : fact) {
      if (id <= cutoff) ++counts[id - 1];
    }
  } else {
    for (const std::uint32_t id : fact) {
      const std::uint32_t idx = id - 1;
      const std::uint32_t slot = idx < cutoff ? idx : cutoff - 1;
      counts[slot] += idx < cutoff;
    }
  }
  return order_heavy_hitters(std::move(counts), k > domain_cardinality);
}

HeavyHitters top_k_by_full_aggregation(const Column& fact,
                                       std::uint32_t domain_cardinality,
                                       std::uint32_t k) {
  if (k == 0) throw InvalidArgument("top_k_by_full_aggregation: k must be at least 1");
  const std::uint32_t cutoff = std::min(k, domain_cardinality);
  std::vector<std::uint64_t> counts = aggregate_count(fact, domain_cardinality);

  HeavyHitters result;
  result.clamped = k > domain_cardinality;
  result.top.reserve(domain_cardinality);
  for (std::uint32_t i = 0; i < domain_cardinality; ++i) {
    result.top.emplace_back(i + 1, counts[i]);
  }
  const auto by_count = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  std::partial_sort(result.top.begin(), result.top.begin() + cutoff, result.top.end(),
                    by_count);
  result.top.resize(cutoff);
  return result;
}

}  // namespace skewdx
