// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/parallel.hpp"

#include <atomic>
#include <cstring>
#include <limits>
#include <memory>
#include <thread>

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

#include "skewdx/error.hpp"
#include "skewdx/kernels.hpp"

namespace skewdx {

const char* to_string(AggStrategy strategy) noexcept {
  switch (strategy) {
    case AggStrategy::independent: return "independent";
    case AggStrategy::shared_atomic: return "shared_atomic";
    case AggStrategy::hybrid: return "hybrid";
  }
  return "?";
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_spans(std::size_t n, unsigned threads) {
  if (threads == 0) throw InvalidArgument("thread count must be at least 1");
  std::vector<std::pair<std::size_t, std::size_t>> spans(threads);
  const std::size_t base = n / threads;
  const std::size_t extra = n % threads;
  std::size_t begin = 0;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t len = base + (t < extra ? 1 : 0);
    spans[t] = {begin, begin + len};
    begin += len;
  }
  return spans;
}

namespace {

void maybe_pin(unsigned worker, bool pin) {
#if defined(__linux__)
  if (!pin) return;
  const unsigned ncpu = std::max(1u, std::thread::hardware_concurrency());
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(worker % ncpu, &set);
  pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
#else
  (void)worker;
  (void)pin;
#endif
}

// Fork-join over the chunk spans; the caller's thread runs the last span.
template <typename Fn>
void run_chunks(const std::vector<std::pair<std::size_t, std::size_t>>& spans,
                bool pin, Fn&& fn) {
  const unsigned threads = static_cast<unsigned>(spans.size());
  std::vector<std::thread> workers;
  workers.reserve(threads - 1);
  for (unsigned t = 0; t + 1 < threads; ++t) {
    workers.emplace_back([&fn, &spans, t, pin] {
      maybe_pin(t, pin);
      fn(t, spans[t].first, spans[t].second);
    });
  }
  fn(threads - 1, spans[threads - 1].first, spans[threads - 1].second);
  for (std::thread& w : workers) w.join();
}

const kernels::KernelTable& kernels_for(std::size_t dim_len) {
  if (dim_len > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    return kernels::scalar_kernels();
  }
  return kernels::active_kernels();
}

}  // namespace

Column parallel_materialize(const Column& fact, const Column& dim, const ParallelPlan& plan) {
  const std::size_t row = find_domain_violation(fact, dim.size());
  if (row != knpos) throw DomainViolation(row, fact[row], dim.size());

  Column out(fact.size());
  const auto spans = chunk_spans(fact.size(), plan.threads);
  const auto& table = kernels_for(dim.size());
  run_chunks(spans, plan.pin_threads,
             [&](unsigned, std::size_t begin, std::size_t end) {
               table.gather_u32(fact.data() + begin, end - begin, dim.data(),
                                out.data() + begin, 0);
             });
  return out;
}

std::vector<std::uint32_t> parallel_select(const Column& fact, const Bitmap& bitmap,
                                           const ParallelPlan& plan) {
  if (fact.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("select: fact row offsets exceed 32 bits");
  }
  const std::size_t row = find_domain_violation(fact, bitmap.size());
  if (row != knpos) throw DomainViolation(row, fact[row], bitmap.size());

  const auto spans = chunk_spans(fact.size(), plan.threads);
  std::vector<std::vector<std::uint32_t>> locals(plan.threads);
  const auto& table = kernels_for(bitmap.size());
  run_chunks(spans, plan.pin_threads,
             [&](unsigned t, std::size_t begin, std::size_t end) {
               locals[t].resize(end - begin);
               const std::size_t count = table.select_offsets(
                   fact.data() + begin, end - begin, bitmap.words(),
                   static_cast<std::uint32_t>(begin), locals[t].data());
               locals[t].resize(count);
             });

  std::size_t total = 0;
  for (const auto& local : locals) total += local.size();
  std::vector<std::uint32_t> out;
  out.reserve(total);
  // Chunk order keeps the concatenation globally ascending.
  for (const auto& local : locals) out.insert(out.end(), local.begin(), local.end());
  return out;
}

std::vector<std::uint64_t> parallel_aggregate(const Column& fact,
                                              std::uint32_t domain_cardinality,
                                              const ParallelPlan& plan,
                                              AggMetrics* metrics) {
  if (plan.strategy == AggStrategy::hybrid &&
      (plan.hot_threshold == 0 || plan.hot_threshold > domain_cardinality)) {
    throw InvalidArgument("hybrid hot threshold must lie in 1..D");
  }
  const std::size_t row = find_domain_violation(fact, domain_cardinality);
  if (row != knpos) throw DomainViolation(row, fact[row], domain_cardinality);

  const auto spans = chunk_spans(fact.size(), plan.threads);
  std::vector<std::uint64_t> result(domain_cardinality, 0);
  std::uint64_t shared_updates = 0;

  switch (plan.strategy) {
    case AggStrategy::independent: {
      std::vector<std::vector<std::uint64_t>> privates(plan.threads);
      run_chunks(spans, plan.pin_threads,
                 [&](unsigned t, std::size_t begin, std::size_t end) {
                   auto& counts = privates[t];
                   counts.assign(domain_cardinality, 0);
                   for (std::size_t k = begin; k < end; ++k) ++counts[fact[k] - 1];
                 });
      for (const auto& counts : privates) {
        for (std::uint32_t i = 0; i < domain_cardinality; ++i) result[i] += counts[i];
      }
      break;
    }

    case AggStrategy::shared_atomic: {
      // Relaxed RMW is enough: increments commute and the joins below order
      // the final reads.
      auto shared = std::make_unique<std::atomic<std::uint64_t>[]>(domain_cardinality);
      run_chunks(spans, plan.pin_threads,
                 [&](unsigned, std::size_t begin, std::size_t end) {
                   for (std::size_t k = begin; k < end; ++k) {
                     shared[fact[k] - 1].fetch_add(1, std::memory_order_relaxed);
                   }
                 });
      for (std::uint32_t i = 0; i < domain_cardinality; ++i) {
        result[i] = shared[i].load(std::memory_order_relaxed);
      }
      shared_updates = fact.size();
      break;
    }

    case AggStrategy::hybrid: {
      const std::uint32_t h = plan.hot_threshold;
      auto shared = std::make_unique<std::atomic<std::uint64_t>[]>(domain_cardinality);
      std::vector<std::vector<std::uint64_t>> privates(plan.threads);
      std::vector<std::uint64_t> cold_counts(plan.threads, 0);
      run_chunks(spans, plan.pin_threads,
                 [&](unsigned t, std::size_t begin, std::size_t end) {
                   auto& hot = privates[t];
                   hot.assign(h, 0);
                   std::uint64_t cold = 0;
                   for (std::size_t k = begin; k < end; ++k) {
                     const std::uint32_t id = fact[k];
                     if (id <= h) {
                       ++hot[id - 1];
                     } else {
                       shared[id - 1].fetch_add(1, std::memory_order_relaxed);
                       ++cold;
                     }
                   }
                   cold_counts[t] = cold;
                 });
      for (std::uint32_t i = 0; i < domain_cardinality; ++i) {
        result[i] = shared[i].load(std::memory_order_relaxed);
      }
      for (const auto& hot : privates) {
        for (std::uint32_t i = 0; i < h; ++i) result[i] += hot[i];
      }
      for (const std::uint64_t c : cold_counts) shared_updates += c;
      break;
    }
  }

  if (metrics) {
    metrics->total_updates = fact.size();
    metrics->shared_updates = shared_updates;
    metrics->accumulator_bytes = memory_footprint(plan, domain_cardinality);
  }
  return result;
}

std::uint64_t memory_footprint(const ParallelPlan& plan, std::uint64_t domain_cardinality) {
  if (plan.threads == 0) throw InvalidArgument("thread count must be at least 1");
  const std::uint64_t cell = 8;
  switch (plan.strategy) {
    case AggStrategy::independent:
      return static_cast<std::uint64_t>(plan.threads) * domain_cardinality * cell;
    case AggStrategy::shared_atomic:
      return domain_cardinality * cell;
    case AggStrategy::hybrid:
      return domain_cardinality * cell +
             static_cast<std::uint64_t>(plan.threads) * plan.hot_threshold * cell;
  }
  return 0;
}

}  // namespace skewdx
