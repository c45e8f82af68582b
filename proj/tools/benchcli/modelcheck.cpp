// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "commands.hpp"
#include "skewdx/cachemodel.hpp"

namespace skewdx::cli {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<ModelCheckRow> cmd_model_check(const ModelCheckConfig& config,
                                           std::ostream& csv, std::ostream& log) {
  if (config.trace_len == 0) throw InvalidArgument("model-check: trace length must be >= 1");
  if (config.zs.empty() || config.ds.empty() || config.ss.empty() || config.layouts.empty()) {
    throw InvalidArgument("model-check: empty grid axis");
  }

  csv << "z,D,S,layout,estimated_hit_rate,simulated_hit_rate,abs_error\n";
  std::vector<ModelCheckRow> rows;

  for (const double z : config.zs) {
    for (const std::uint32_t d : config.ds) {
      const ZipfSpec spec{d, config.trace_len, z, config.seed};
      const auto value_freqs = zipf_frequencies(spec);
      for (const Layout layout : config.layouts) {
        // the trace does not depend on S; share it across capacities
        const auto gen = generate_fact_column(spec, layout);
        const CacheGeometry shape{1, config.line_bytes, config.element_bytes};
        const auto trace = trace_from_column(gen.values, shape);
        const auto lf = line_frequencies(value_freqs, layout, shape, config.seed);

        for (const std::uint64_t s : config.ss) {
          ModelCheckRow row;
          row.z = z;
          row.domain_cardinality = d;
          row.cache_lines = s;
          row.layout = layout;
          row.estimated = estimate_hit_rate(lf, s);
          row.simulated = simulate_lru(trace, s).steady_hit_rate(s);
          row.abs_error = std::abs(row.estimated - row.simulated);

          csv << format_double(row.z) << ',' << row.domain_cardinality << ','
              << row.cache_lines << ',' << to_string(row.layout) << ','
              << format_double(row.estimated) << ',' << format_double(row.simulated)
              << ',' << format_double(row.abs_error) << '\n';
          log << "model-check: z=" << row.z << " D=" << d << " S=" << s << " "
              << to_string(layout) << " est=" << format_double(row.estimated)
              << " sim=" << format_double(row.simulated) << "\n";
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

bool all_within_tolerance(const std::vector<ModelCheckRow>& rows, double tolerance) {
  for (const ModelCheckRow& row : rows) {
    if (row.abs_error > tolerance) return false;
  }
  return true;
}

}  // namespace skewdx::cli
