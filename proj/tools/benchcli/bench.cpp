// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "checksum.hpp"
#include "commands.hpp"
#include "dataset.hpp"
#include "skewdx/cachemodel.hpp"
#include "skewdx/kernels.hpp"
#include "skewdx/operators.hpp"

namespace skewdx::cli {

const char* to_string(BenchQuery query) noexcept {
  switch (query) {
    case BenchQuery::materialize: return "materialize";
    case BenchQuery::select: return "select";
    case BenchQuery::aggregate: return "aggregate";
    case BenchQuery::top_k: return "top_k";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kLargeWorkingSetBytes = 3ull << 29;  // 1.5 GiB

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct TimedResult {
  std::uint64_t median_ns = 0;
  std::uint64_t min_ns = 0;
  std::uint64_t checksum = 0;
};

// One warm-up pass, then `repetitions` timed passes of `run`, which returns
// the result checksum. Results are deterministic, so the checksum of the last
// pass stands for all of them.
TimedResult time_query(unsigned repetitions, const std::function<std::uint64_t()>& run) {
  TimedResult result;
  result.checksum = run();  // warm-up
  std::vector<std::uint64_t> times(repetitions);
  for (unsigned rep = 0; rep < repetitions; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    result.checksum = run();
    const auto stop = std::chrono::steady_clock::now();
    times[rep] = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  result.median_ns = times[(times.size() - 1) / 2];
  result.min_ns = times.front();
  return result;
}

struct ResolvedConfig {
  std::uint32_t hot_threshold = 0;
  std::uint32_t split_threshold = 0;
};

ResolvedConfig resolve(const BenchConfig& config, std::uint32_t d) {
  ResolvedConfig r;
  if (config.query == BenchQuery::aggregate) {
    if (config.threads > 1 && config.strategy == AggStrategy::hybrid) {
      r.hot_threshold = config.hot_threshold ? config.hot_threshold
                                             : std::min<std::uint32_t>(8192, d);
    } else if (config.threads == 1 && config.lanes > 0) {
      r.hot_threshold = config.hot_threshold ? config.hot_threshold
                                             : std::min<std::uint32_t>(40, d);
    }
  }
  if (config.query == BenchQuery::materialize) {
    if (config.split_threshold > 0) {
      r.split_threshold = config.split_threshold;
    } else if (config.split_cache_bytes > 0) {
      // largest hot prefix whose footprint fits the byte budget
      const std::uint64_t fit = config.split_cache_bytes / 4;
      r.split_threshold = static_cast<std::uint32_t>(
          std::min<std::uint64_t>(d, std::max<std::uint64_t>(1, fit)));
    }
  }
  return r;
}

void validate_config(const BenchConfig& config) {
  if (config.repetitions == 0) throw InvalidArgument("bench: repetitions must be >= 1");
  if (!(config.selectivity >= 0.0 && config.selectivity <= 1.0)) {
    throw InvalidArgument("bench: selectivity must lie in [0, 1]");
  }
  if (config.threads == 0) throw InvalidArgument("bench: threads must be >= 1");
  const bool split_requested = config.split_threshold > 0 || config.split_cache_bytes > 0;
  if (split_requested && config.query != BenchQuery::materialize) {
    throw InvalidArgument("bench: split thresholds only apply to materialize");
  }
  if (split_requested && config.threads > 1) {
    throw InvalidArgument("bench: threshold-split materialize is single-threaded");
  }
  if (config.lanes > 0 && config.query != BenchQuery::aggregate) {
    throw InvalidArgument("bench: --lanes only applies to aggregate");
  }
  if (config.lanes > 0 && config.threads > 1) {
    throw InvalidArgument("bench: lane-copy aggregation is single-threaded");
  }
  if (config.hit_rates && config.fact_file) {
    throw InvalidArgument("bench: --hit-rates requires a synthetic workload");
  }
  if (!config.fact_file) {
    if (config.query == BenchQuery::top_k && config.top_k > config.domain_cardinality) {
      throw InvalidArgument("bench: top-k must not exceed the domain cardinality");
    }
    const std::uint64_t bytes =
        config.tuple_count * 8 + config.domain_cardinality * 40;
    if (bytes > kLargeWorkingSetBytes && !config.allow_large) {
      throw InvalidArgument("bench: working set above 1.5 GiB; pass --large to proceed");
    }
  }
}

std::uint64_t run_query(const BenchConfig& config, const ResolvedConfig& resolved,
                        const BenchDataset& ds, Layout layout,
                        AggMetrics* agg_metrics) {
  const Column& fact = ds.fact(layout);
  const std::uint32_t d = ds.domain_cardinality;

  switch (config.query) {
    case BenchQuery::materialize: {
      Column out;
      if (resolved.split_threshold > 0 && layout == Layout::freq) {
        out = materialize_split(fact, ds.dim(layout), {resolved.split_threshold});
      } else if (config.threads > 1) {
        ParallelPlan plan;
        plan.threads = config.threads;
        plan.pin_threads = config.pin_threads;
        out = parallel_materialize(fact, ds.dim(layout), plan);
      } else {
        out = materialize(fact, ds.dim(layout), config.prefetch_distance);
      }
      return rolling_checksum(out);
    }

    case BenchQuery::select: {
      std::vector<std::uint32_t> offsets;
      if (config.threads > 1) {
        ParallelPlan plan;
        plan.threads = config.threads;
        plan.pin_threads = config.pin_threads;
        offsets = parallel_select(fact, ds.bitmap(layout), plan);
      } else {
        offsets = select(fact, ds.bitmap(layout));
      }
      return rolling_checksum(offsets);
    }

    case BenchQuery::aggregate: {
      std::vector<std::uint64_t> counts;
      if (config.threads > 1) {
        ParallelPlan plan;
        plan.threads = config.threads;
        plan.strategy = config.strategy;
        plan.hot_threshold = resolved.hot_threshold ? resolved.hot_threshold : 1;
        plan.pin_threads = config.pin_threads;
        counts = parallel_aggregate(fact, d, plan, agg_metrics);
      } else if (config.lanes > 0) {
        counts = aggregate_count_lanecopy(fact, d, resolved.hot_threshold, config.lanes);
      } else {
        counts = aggregate_count(fact, d);
      }
      return unordered_checksum(counts);
    }

    case BenchQuery::top_k: {
      // The freq side aggregates only ranks 1..k; the baseline side has to
      // compute the full aggregate and extract the top k.
      const HeavyHitters hh =
          layout == Layout::freq
              ? heavy_hitter_count(fact, d, config.top_k, config.hh_branchy)
              : top_k_by_full_aggregation(fact, d, config.top_k);
      std::vector<std::uint64_t> counts;
      counts.reserve(hh.top.size());
      for (const auto& [id, count] : hh.top) counts.push_back(count);
      return unordered_checksum(counts);
    }
  }
  throw InvalidArgument("bench: unknown query");
}

}  // namespace

void write_bench_csv_header(std::ostream& out) {
  out << "query,layout,D,N,z,threads,strategy,hot_threshold,split_threshold,"
         "top_k,selectivity,median_ns,min_ns,tuples_per_s,checksum,"
         "est_hit_rate,sim_hit_rate\n";
}

void write_bench_csv_row(std::ostream& out, const BenchRow& row) {
  char checksum_hex[20];
  std::snprintf(checksum_hex, sizeof checksum_hex, "%016llx",
                static_cast<unsigned long long>(row.checksum));
  out << row.query << ',' << row.layout << ',' << row.domain_cardinality << ','
      << row.tuple_count << ',' << format_double(row.z) << ',' << row.threads << ','
      << row.strategy << ',' << row.hot_threshold << ',' << row.split_threshold << ','
      << row.top_k << ',' << format_double(row.selectivity) << ',' << row.median_ns
      << ',' << row.min_ns << ',' << format_double(row.tuples_per_s) << ','
      << checksum_hex << ','
      << (row.est_hit_rate ? format_double(*row.est_hit_rate) : std::string()) << ','
      << (row.sim_hit_rate ? format_double(*row.sim_hit_rate) : std::string()) << '\n';
}

std::vector<BenchRow> cmd_bench(const BenchConfig& config, std::ostream& csv,
                                std::ostream& log) {
  validate_config(config);

  struct ScalarGuard {
    bool active;
    explicit ScalarGuard(bool on) : active(on) {
      if (on) kernels::force_scalar_kernels(true);
    }
    ~ScalarGuard() {
      if (active) kernels::force_scalar_kernels(false);
    }
  } scalar_guard(config.no_simd);

  // In file mode domain_cardinality 0 means "derive from the data".
  BenchDataset ds =
      config.fact_file
          ? load_dataset(*config.fact_file, config.index_file, config.file_domain,
                         config.selectivity, config.seed)
          : make_synthetic_dataset({config.domain_cardinality, config.tuple_count,
                                    config.z, config.seed},
                                   config.selectivity);
  const ResolvedConfig resolved = resolve(config, ds.domain_cardinality);

  std::vector<Layout> layouts;
  if (config.layout == LayoutChoice::rand) layouts = {Layout::rand};
  else if (config.layout == LayoutChoice::freq) layouts = {Layout::freq};
  else layouts = {Layout::rand, Layout::freq};

  write_bench_csv_header(csv);
  std::vector<BenchRow> rows;
  for (const Layout layout : layouts) {
    AggMetrics agg_metrics;
    const TimedResult timed = time_query(config.repetitions, [&] {
      return run_query(config, resolved, ds, layout, &agg_metrics);
    });
    if (config.query == BenchQuery::aggregate && config.threads > 1) {
      log << "bench: " << to_string(layout) << " aggregate updates="
          << agg_metrics.total_updates << " shared_fraction="
          << format_double(agg_metrics.total_updates == 0
                               ? 0.0
                               : static_cast<double>(agg_metrics.shared_updates) /
                                     static_cast<double>(agg_metrics.total_updates))
          << " accumulator_bytes=" << agg_metrics.accumulator_bytes << "\n";
    }

    BenchRow row;
    row.query = to_string(config.query);
    row.layout = to_string(layout);
    row.domain_cardinality = ds.domain_cardinality;
    row.tuple_count = ds.tuple_count;
    row.z = config.fact_file ? 0.0 : config.z;
    row.threads = config.threads;
    row.strategy = to_string(config.strategy);
    row.hot_threshold = resolved.hot_threshold;
    row.split_threshold = resolved.split_threshold;
    row.top_k = config.query == BenchQuery::top_k ? config.top_k : 0;
    row.selectivity = config.selectivity;
    row.median_ns = timed.median_ns;
    row.min_ns = timed.min_ns;
    row.tuples_per_s = timed.median_ns == 0
                           ? 0.0
                           : static_cast<double>(ds.tuple_count) * 1e9 /
                                 static_cast<double>(timed.median_ns);
    row.checksum = timed.checksum;

    if (config.hit_rates) {
      const ZipfSpec spec{ds.domain_cardinality, ds.tuple_count, config.z, config.seed};
      const CacheGeometry geom{config.cache_lines, config.line_bytes, 4};
      const auto value_freqs = zipf_frequencies(spec);
      const auto lf = line_frequencies(value_freqs, layout, geom, config.seed);
      row.est_hit_rate = estimate_hit_rate(lf, config.cache_lines);
      const auto trace = trace_from_column(ds.fact(layout), geom);
      row.sim_hit_rate = simulate_lru(trace, config.cache_lines)
                             .steady_hit_rate(config.cache_lines);
    }

    write_bench_csv_row(csv, row);
    rows.push_back(std::move(row));
  }

  if (rows.size() == 2) {
    if (rows[0].checksum != rows[1].checksum) {
      throw CorrectnessError("bench: checksum mismatch between layouts for query " +
                             std::string(to_string(config.query)));
    }
    if (rows[1].median_ns > 0) {
      const double ratio = static_cast<double>(rows[0].median_ns) /
                           static_cast<double>(rows[1].median_ns);
      log << "bench: " << rows[0].query << " rand/freq time ratio = "
          << format_double(ratio) << "\n";
    }
  }
  return rows;
}

}  // namespace skewdx::cli
