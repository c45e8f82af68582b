// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skewdx/column.hpp"
#include "skewdx/error.hpp"
#include "skewdx/parallel.hpp"

namespace skewdx::cli {

// Exit codes: 0 ok, 1 usage/config, 2 data error, 3 correctness-gate failure.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDataError = 2,
  kExitCorrectness = 3,
};

/// A result-equivalence gate failed; the run must exit with kExitCorrectness.
class CorrectnessError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// generate

struct GenerateConfig {
  ZipfSpec spec;
  Layout layout = Layout::rand;
  std::filesystem::path out_prefix;
  bool allow_large = false;  ///< required above ~1.5 GiB of working set
};

struct GenerateResult {
  std::filesystem::path fact_path;
  std::filesystem::path counts_path;
  std::filesystem::path index_path;  ///< empty unless layout == freq
};

GenerateResult cmd_generate(const GenerateConfig& config, std::ostream& log);

// ---------------------------------------------------------------------------
// ingestion

struct IngestResult {
  std::uint32_t domain_cardinality = 0;
  std::uint64_t tuple_count = 0;
  std::filesystem::path fact_path;
  std::filesystem::path aux_path;   ///< node-id remap or key dictionary
  std::filesystem::path meta_path;  ///< JSON sidecar with d and n
};

/// Whitespace-separated "src dst" edge list; '#' lines are comments. Node ids
/// are densified to 1-based identifiers in order of first appearance; the
/// fact column stores one destination reference per edge.
IngestResult cmd_ingest_snap(const std::filesystem::path& input,
                             const std::filesystem::path& out_prefix,
                             std::ostream& log);

/// CSV with a header row; the key column is dictionary-encoded to dense
/// 1-based identifiers, one fact row per record.
IngestResult cmd_ingest_csv(const std::filesystem::path& input,
                            const std::string& key_column,
                            const std::filesystem::path& out_prefix,
                            char delimiter, std::ostream& log);

// ---------------------------------------------------------------------------
// index

struct IndexBuildConfig {
  std::filesystem::path fact_path;
  std::uint32_t domain_cardinality = 0;  ///< 0 = largest identifier in the column
  std::filesystem::path out_path;
};

void cmd_index_build(const IndexBuildConfig& config, std::ostream& log);

struct IndexApplyConfig {
  std::filesystem::path index_path;
  std::optional<std::filesystem::path> fact_in, fact_out;  ///< recode
  std::optional<std::filesystem::path> dim_in, dim_out;    ///< permute
};

void cmd_index_apply(const IndexApplyConfig& config, std::ostream& log);

// ---------------------------------------------------------------------------
// bench

enum class BenchQuery { materialize, select, aggregate, top_k };
enum class LayoutChoice { rand, freq, both };

const char* to_string(BenchQuery query) noexcept;

struct BenchConfig {
  BenchQuery query = BenchQuery::materialize;
  LayoutChoice layout = LayoutChoice::both;

  std::uint32_t domain_cardinality = 1'000'000;
  std::uint64_t tuple_count = 10'000'000;
  double z = 1.0;
  std::uint64_t seed = 42;

  unsigned threads = 1;
  AggStrategy strategy = AggStrategy::independent;
  std::uint32_t hot_threshold = 0;      ///< 0 = per-mode default (8192 hybrid, 40 lanes)
  std::uint32_t split_threshold = 0;    ///< 0 = plain materialize
  std::uint64_t split_cache_bytes = 0;  ///< derive split_threshold from a byte budget
  std::uint32_t top_k = 4000;
  double selectivity = 0.5;
  unsigned repetitions = 5;

  std::uint32_t lanes = 0;  ///< 0 = plain single-thread aggregation
  bool hh_branchy = false;
  int prefetch_distance = 0;
  bool pin_threads = false;
  bool no_simd = false;

  bool hit_rates = false;  ///< also fill est/sim hit-rate columns (synthetic only)
  std::uint64_t cache_lines = 8192;
  std::uint32_t line_bytes = 64;

  std::optional<std::filesystem::path> fact_file;  ///< unset = synthetic workload
  std::optional<std::filesystem::path> index_file;
  std::uint32_t file_domain = 0;  ///< file mode: 0 = largest identifier present
  bool allow_large = false;
};

struct BenchRow {
  std::string query;
  std::string layout;
  std::uint32_t domain_cardinality = 0;
  std::uint64_t tuple_count = 0;
  double z = 0.0;
  unsigned threads = 1;
  std::string strategy;
  std::uint32_t hot_threshold = 0;
  std::uint32_t split_threshold = 0;
  std::uint32_t top_k = 0;
  double selectivity = 0.0;
  std::uint64_t median_ns = 0;
  std::uint64_t min_ns = 0;
  double tuples_per_s = 0.0;
  std::uint64_t checksum = 0;
  std::optional<double> est_hit_rate;
  std::optional<double> sim_hit_rate;
};

void write_bench_csv_header(std::ostream& out);
void write_bench_csv_row(std::ostream& out, const BenchRow& row);

/// Runs the configured query once per requested layout (after one warm-up
/// pass and `repetitions` timed passes each) and emits one CSV row per
/// layout. With LayoutChoice::both the layout checksums must agree; a
/// mismatch throws CorrectnessError.
std::vector<BenchRow> cmd_bench(const BenchConfig& config, std::ostream& csv,
                                std::ostream& log);

// ---------------------------------------------------------------------------
// model-check

struct ModelCheckConfig {
  std::vector<double> zs{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<std::uint32_t> ds{1u << 16, 1u << 20};
  std::vector<std::uint64_t> ss{1u << 9, 1u << 13};
  std::vector<Layout> layouts{Layout::freq, Layout::rand};
  std::uint64_t trace_len = 10'000'000;
  std::uint32_t line_bytes = 64;
  std::uint32_t element_bytes = 4;
  std::uint64_t seed = 42;
  double tolerance = 0.05;
};

struct ModelCheckRow {
  double z = 0.0;
  std::uint32_t domain_cardinality = 0;
  std::uint64_t cache_lines = 0;
  Layout layout = Layout::freq;
  double estimated = 0.0;
  double simulated = 0.0;
  double abs_error = 0.0;
};

/// Estimates and simulates every grid point, streaming CSV rows. The caller
/// decides what to do when a row exceeds the tolerance (the CLI exits 3).
std::vector<ModelCheckRow> cmd_model_check(const ModelCheckConfig& config,
                                           std::ostream& csv, std::ostream& log);

bool all_within_tolerance(const std::vector<ModelCheckRow>& rows, double tolerance);

}  // namespace skewdx::cli
