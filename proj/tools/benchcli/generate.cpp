// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "commands.hpp"
#include "skewdx/column_io.hpp"
#include "skewdx/permindex.hpp"

namespace skewdx::cli {

namespace {

constexpr std::uint64_t kLargeWorkingSetBytes = 3ull << 29;  // 1.5 GiB

std::uint64_t estimated_working_set(const ZipfSpec& spec) {
  // fact column + cdf table + counts + index arrays
  return spec.tuple_count * 4 + spec.domain_cardinality * (8 + 8 + 8);
}

}  // namespace

GenerateResult cmd_generate(const GenerateConfig& config, std::ostream& log) {
  if (config.out_prefix.empty()) throw InvalidArgument("generate: output prefix required");
  if (!config.allow_large && estimated_working_set(config.spec) > kLargeWorkingSetBytes) {
    throw InvalidArgument(
        "generate: working set above 1.5 GiB; pass --large to proceed");
  }

  const GeneratedColumn gen = generate_fact_column(config.spec, config.layout);

  GenerateResult result;
  result.fact_path = config.out_prefix;
  result.fact_path += ".fact";
  result.counts_path = config.out_prefix;
  result.counts_path += ".counts";
  write_column(result.fact_path, gen.values);
  write_u64_array(result.counts_path, gen.ground_truth_counts);

  if (config.layout == Layout::freq) {
    result.index_path = config.out_prefix;
    result.index_path += ".pidx";
    write_index(result.index_path, rebuild(gen.values, config.spec.domain_cardinality));
  }

  log << "generate: wrote " << gen.values.size() << " tuples over domain "
      << config.spec.domain_cardinality << " (" << to_string(config.layout)
      << " layout) to " << result.fact_path.string() << "\n";
  return result;
}

void cmd_index_build(const IndexBuildConfig& config, std::ostream& log) {
  const Column fact = read_column(config.fact_path);
  if (fact.empty()) throw FormatError("index build: fact column is empty");
  std::uint32_t d = config.domain_cardinality;
  if (d == 0) d = *std::max_element(fact.begin(), fact.end());
  write_index(config.out_path, rebuild(fact, d));
  log << "index build: domain " << d << " -> " << config.out_path.string() << "\n";
}

void cmd_index_apply(const IndexApplyConfig& config, std::ostream& log) {
  const PermutationIndex index = read_index(config.index_path);
  if (config.fact_in.has_value() != config.fact_out.has_value() ||
      config.dim_in.has_value() != config.dim_out.has_value()) {
    throw InvalidArgument("index apply: input and output paths must be paired");
  }
  if (!config.fact_in && !config.dim_in) {
    throw InvalidArgument("index apply: nothing to do; pass --fact and/or --dim");
  }
  if (config.fact_in) {
    write_column(*config.fact_out, recode_fact(read_column(*config.fact_in), index));
    log << "index apply: recoded " << config.fact_in->string() << " -> "
        << config.fact_out->string() << "\n";
  }
  if (config.dim_in) {
    write_column(*config.dim_out, permute_dimension(read_column(*config.dim_in), index));
    log << "index apply: permuted " << config.dim_in->string() << " -> "
        << config.dim_out->string() << "\n";
  }
}

}  // namespace skewdx::cli
