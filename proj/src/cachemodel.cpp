// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/cachemodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "skewdx/error.hpp"

namespace skewdx {

void validate(const CacheGeometry& geometry) {
  if (geometry.lines == 0) throw InvalidArgument("cache geometry: line count must be at least 1");
  if (geometry.element_bytes == 0 || geometry.line_bytes == 0 ||
      geometry.line_bytes % geometry.element_bytes != 0) {
    throw InvalidArgument("cache geometry: line bytes must be a multiple of element bytes");
  }
}

std::vector<double> line_frequencies(std::span<const double> value_freqs,
                                     Layout layout,
                                     const CacheGeometry& geometry,
                                     std::uint64_t seed) {
  validate(geometry);
  if (value_freqs.empty()) throw InvalidArgument("line_frequencies: empty frequency vector");
  const std::uint32_t per_line = geometry.elements_per_line();
  const std::size_t d = value_freqs.size();
  const std::size_t lines = (d + per_line - 1) / per_line;

  std::vector<double> f(lines, 0.0);
  if (layout == Layout::freq) {
    for (std::size_t r = 0; r < d; ++r) f[r / per_line] += value_freqs[r];
  } else {
    const auto rank_to_id = random_bijection(static_cast<std::uint32_t>(d), seed);
    for (std::size_t r = 0; r < d; ++r) {
      f[(rank_to_id[r] - 1) / per_line] += value_freqs[r];
    }
  }
  return f;
}

namespace {

// Largest trial horizon probed before a line is treated as always resident.
constexpr std::uint64_t kHorizonCap = std::uint64_t{1} << 40;
// f_i this close to 1 makes 1 - f_i numerically meaningless; the line is
// pinned in cache for any plausible S.
constexpr double kSaturated = 1.0 - 1e-12;

// Expected distinct lines seen in K trials ending with a reference to the
// line of frequency f, over frequencies sorted descending with prefix sums.
// Lines expected more than once contribute only one distinct occurrence.
double expected_distinct(double k, double f, std::span<const double> sorted,
                         std::span<const double> prefix) {
  const double cutoff = (1.0 - f) / k;  // n_j > 1  iff  f_j > cutoff
  const auto first_below =
      std::partition_point(sorted.begin(), sorted.end(),
                           [cutoff](double v) { return v > cutoff; });
  std::size_t m = static_cast<std::size_t>(first_below - sorted.begin());
  double mass = prefix[m];
  if (f > cutoff) {  // exclude the line itself from the repeat sum
    mass -= f;
    m -= 1;
  }
  const double repeats = k * mass / (1.0 - f) - static_cast<double>(m);
  return k - repeats;
}

}  // namespace

double estimate_hit_rate(std::span<const double> line_freqs, std::uint64_t cache_lines) {
  if (cache_lines == 0) throw InvalidArgument("estimate_hit_rate: cache must have at least 1 line");

  std::vector<double> sorted(line_freqs.begin(), line_freqs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  while (!sorted.empty() && sorted.back() <= 0.0) sorted.pop_back();
  if (sorted.size() <= cache_lines) return 1.0;

  std::vector<double> prefix(sorted.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];

  const double target = static_cast<double>(cache_lines);
  double total = 0.0;
  for (const double f : sorted) {
    if (f >= kSaturated) {
      total += f;
      continue;
    }

    // Bracket the horizon by doubling from S, then bisect for the smallest
    // K with d(K) >= S. When d never reaches S before the cap, the line is
    // effectively never evicted and the CDF at the cap saturates to 1.
    std::uint64_t hi = cache_lines;
    double d = expected_distinct(static_cast<double>(hi), f, sorted, prefix);
    while (d < target && hi < kHorizonCap) {
      hi *= 2;
      d = expected_distinct(static_cast<double>(hi), f, sorted, prefix);
    }
    std::uint64_t k = hi;
    if (d >= target && hi > cache_lines) {
      std::uint64_t lo = hi / 2 + 1;
      while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (expected_distinct(static_cast<double>(mid), f, sorted, prefix) >= target) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      k = lo;
    }

    // 1 - (1 - f)^K, evaluated in log space.
    const double cdf = -std::expm1(static_cast<double>(k) * std::log1p(-f));
    total += f * cdf;
  }
  return std::min(total, 1.0);
}

LruStats simulate_lru(std::span<const std::uint32_t> trace, std::uint64_t cache_lines) {
  if (cache_lines == 0) throw InvalidArgument("simulate_lru: cache must have at least 1 line");
  LruStats stats;
  stats.accesses = trace.size();
  if (trace.empty()) return stats;

  const std::uint32_t max_line = *std::max_element(trace.begin(), trace.end());
  const std::size_t universe = static_cast<std::size_t>(max_line) + 1;
  constexpr std::uint32_t kNil = 0xFFFFFFFFu;

  // Intrusive recency list over dense line ids; O(1) per access.
  std::vector<std::uint32_t> prev(universe, kNil);
  std::vector<std::uint32_t> next(universe, kNil);
  std::vector<std::uint8_t> resident(universe, 0);
  std::vector<std::uint8_t> touched(universe, 0);
  std::uint32_t head = kNil;
  std::uint32_t tail = kNil;
  std::uint64_t size = 0;

  auto unlink = [&](std::uint32_t x) {
    const std::uint32_t p = prev[x];
    const std::uint32_t n = next[x];
    if (p != kNil) next[p] = n; else head = n;
    if (n != kNil) prev[n] = p; else tail = p;
  };
  auto push_front = [&](std::uint32_t x) {
    prev[x] = kNil;
    next[x] = head;
    if (head != kNil) prev[head] = x; else tail = x;
    head = x;
  };

  for (const std::uint32_t line : trace) {
    if (!touched[line]) {
      touched[line] = 1;
      ++stats.distinct_lines;
    }
    if (resident[line]) {
      ++stats.hits;
      if (line != head) {
        unlink(line);
        push_front(line);
      }
    } else {
      resident[line] = 1;
      push_front(line);
      if (++size > cache_lines) {
        const std::uint32_t victim = tail;
        unlink(victim);
        resident[victim] = 0;
        --size;
      }
    }
  }
  return stats;
}

std::vector<std::uint32_t> trace_from_column(const Column& fact,
                                             const CacheGeometry& geometry) {
  validate(geometry);
  const std::uint32_t per_line = geometry.elements_per_line();
  std::vector<std::uint32_t> trace(fact.size());
  for (std::size_t k = 0; k < fact.size(); ++k) {
    const std::uint32_t id = fact[k];
    if (id == 0) throw DomainViolation(k, id, kMaxDomainCardinality);
    trace[k] = (id - 1) / per_line;
  }
  return trace;
}

}  // namespace skewdx
