// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "skewdx/error.hpp"

namespace {

using namespace skewdx;
using namespace skewdx::cli;

// "-" or empty selects stdout.
struct CsvSink {
  std::ofstream file;
  std::ostream& open(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw IoError("cannot open for writing: " + path);
    return file;
  }
};

const std::map<std::string, Layout> kLayoutNames{
    {"rand", Layout::rand},
    {"freq", Layout::freq},
};
const std::map<std::string, LayoutChoice> kLayoutChoiceNames{
    {"rand", LayoutChoice::rand},
    {"freq", LayoutChoice::freq},
    {"both", LayoutChoice::both},
};
const std::map<std::string, BenchQuery> kQueryNames{
    {"materialize", BenchQuery::materialize},
    {"select", BenchQuery::select},
    {"aggregate", BenchQuery::aggregate},
    {"top_k", BenchQuery::top_k},
};
const std::map<std::string, AggStrategy> kStrategyNames{
    {"independent", AggStrategy::independent},
    {"shared-atomic", AggStrategy::shared_atomic},
    {"hybrid", AggStrategy::hybrid},
};

int run(int argc, char** argv) {
  CLI::App app{"skewdex benchcli: skewed-workload generation, permutation "
               "indexes, operator benchmarks, and cache-model validation"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  auto generate_config = std::make_shared<GenerateConfig>();
  std::string generate_out;
  CLI::App* generate = app.add_subcommand("generate", "synthesize a Zipf fact column");
  generate->add_option("--d", generate_config->spec.domain_cardinality,
                       "dimension domain cardinality")->required();
  generate->add_option("--n", generate_config->spec.tuple_count, "fact tuple count")
      ->required();
  generate->add_option("--z", generate_config->spec.z, "Zipf exponent (0 = uniform)");
  generate->add_option("--seed", generate_config->spec.seed, "random seed");
  generate->add_option("--layout", generate_config->layout, "identifier layout")
      ->transform(CLI::CheckedTransformer(kLayoutNames));
  generate->add_option("--out", generate_out, "output path prefix")->required();
  generate->add_flag("--large", generate_config->allow_large,
                     "allow working sets above 1.5 GiB");
  generate->callback([generate_config, &generate_out] {
    generate_config->out_prefix = generate_out;
    cmd_generate(*generate_config, std::cerr);
  });

  // ingest-snap ---------------------------------------------------------------
  std::string snap_input, snap_out;
  CLI::App* ingest_snap =
      app.add_subcommand("ingest-snap", "ingest a whitespace-separated edge list");
  ingest_snap->add_option("--input", snap_input, "edge list file")->required();
  ingest_snap->add_option("--out", snap_out, "output path prefix")->required();
  ingest_snap->callback(
      [&snap_input, &snap_out] { cmd_ingest_snap(snap_input, snap_out, std::cerr); });

  // ingest-csv ----------------------------------------------------------------
  std::string csv_input, csv_out, csv_key, csv_delim = ",";
  CLI::App* ingest_csv =
      app.add_subcommand("ingest-csv", "dictionary-encode a CSV key column");
  ingest_csv->add_option("--input", csv_input, "CSV file with a header row")->required();
  ingest_csv->add_option("--key-column", csv_key, "name of the key column")->required();
  ingest_csv->add_option("--out", csv_out, "output path prefix")->required();
  ingest_csv->add_option("--delimiter", csv_delim, "field delimiter (or 'tab')");
  ingest_csv->callback([&csv_input, &csv_out, &csv_key, &csv_delim] {
    const char delim = csv_delim == "tab" || csv_delim == "\\t" ? '\t'
                       : csv_delim.empty()                      ? ','
                                                                : csv_delim[0];
    cmd_ingest_csv(csv_input, csv_key, csv_out, delim, std::cerr);
  });

  // index ---------------------------------------------------------------------
  CLI::App* index = app.add_subcommand("index", "build or apply a permutation index");
  index->require_subcommand(1);

  auto build_config = std::make_shared<IndexBuildConfig>();
  std::string build_fact, build_out;
  CLI::App* index_build = index->add_subcommand("build", "build an index from a fact column");
  index_build->add_option("--fact", build_fact, "fact column file")->required();
  index_build->add_option("--d", build_config->domain_cardinality,
                          "domain cardinality (default: largest identifier)");
  index_build->add_option("--out", build_out, "index output file")->required();
  index_build->callback([build_config, &build_fact, &build_out] {
    build_config->fact_path = build_fact;
    build_config->out_path = build_out;
    cmd_index_build(*build_config, std::cerr);
  });

  std::string apply_index, apply_fact_in, apply_fact_out, apply_dim_in, apply_dim_out;
  CLI::App* index_apply =
      index->add_subcommand("apply", "recode a fact column / permute a dimension column");
  index_apply->add_option("--index", apply_index, "index file")->required();
  index_apply->add_option("--fact", apply_fact_in, "fact column to recode");
  index_apply->add_option("--fact-out", apply_fact_out, "recoded output path");
  index_apply->add_option("--dim", apply_dim_in, "dimension column to permute");
  index_apply->add_option("--dim-out", apply_dim_out, "permuted output path");
  index_apply->callback([&] {
    IndexApplyConfig config;
    config.index_path = apply_index;
    if (!apply_fact_in.empty()) config.fact_in = apply_fact_in;
    if (!apply_fact_out.empty()) config.fact_out = apply_fact_out;
    if (!apply_dim_in.empty()) config.dim_in = apply_dim_in;
    if (!apply_dim_out.empty()) config.dim_out = apply_dim_out;
    cmd_index_apply(config, std::cerr);
  });

  // bench -----------------------------------------------------------------------
  auto bench_config = std::make_shared<BenchConfig>();
  std::string bench_out, bench_fact, bench_index;
  CLI::App* bench = app.add_subcommand("bench", "run an operator benchmark");
  bench->add_option("--query", bench_config->query, "operator to run")
      ->transform(CLI::CheckedTransformer(kQueryNames))
      ->required();
  bench->add_option("--layout", bench_config->layout, "layout(s) to run")
      ->transform(CLI::CheckedTransformer(kLayoutChoiceNames));
  CLI::Option* bench_d =
      bench->add_option("--d", bench_config->domain_cardinality,
                        "domain cardinality (synthetic) / override (file mode)");
  bench->add_option("--n", bench_config->tuple_count, "tuple count (synthetic mode)");
  bench->add_option("--z", bench_config->z, "Zipf exponent (synthetic mode)");
  bench->add_option("--seed", bench_config->seed, "random seed");
  bench->add_option("--threads", bench_config->threads, "worker thread count");
  bench->add_option("--strategy", bench_config->strategy, "parallel aggregation strategy")
      ->transform(CLI::CheckedTransformer(kStrategyNames));
  bench->add_option("--hot-threshold", bench_config->hot_threshold,
                    "hot-identifier cutoff (hybrid or lane-copy)");
  bench->add_option("--split-threshold", bench_config->split_threshold,
                    "rank cutoff for threshold-split materialize");
  bench->add_option("--split-cache-bytes", bench_config->split_cache_bytes,
                    "derive the split threshold from a cache byte budget");
  bench->add_option("--top-k", bench_config->top_k, "heavy hitter count for top_k");
  bench->add_option("--selectivity", bench_config->selectivity,
                    "fraction of dimension rows passing the select predicate");
  bench->add_option("--repetitions", bench_config->repetitions, "timed repetitions");
  bench->add_option("--lanes", bench_config->lanes,
                    "lane-copy aggregation width (single-threaded aggregate)");
  bench->add_flag("--hh-branchy", bench_config->hh_branchy,
                  "use the branching heavy-hitter inner loop");
  bench->add_option("--prefetch-distance", bench_config->prefetch_distance,
                    "software prefetch distance hint (kernels may ignore)");
  bench->add_flag("--pin", bench_config->pin_threads, "pin worker threads");
  bench->add_flag("--no-simd", bench_config->no_simd, "force scalar kernels");
  bench->add_flag("--hit-rates", bench_config->hit_rates,
                  "also report estimated and simulated hit rates");
  bench->add_option("--cache-lines", bench_config->cache_lines,
                    "cache capacity in lines for --hit-rates");
  bench->add_option("--line-bytes", bench_config->line_bytes,
                    "cache line size for --hit-rates");
  bench->add_option("--fact", bench_fact, "fact column file (file mode)");
  bench->add_option("--index", bench_index, "permutation index file (file mode)");
  bench->add_flag("--large", bench_config->allow_large,
                  "allow working sets above 1.5 GiB");
  bench->add_option("--out", bench_out, "CSV destination ('-' = stdout)");
  bench->callback([bench_config, &bench_out, &bench_fact, &bench_index, bench_d] {
    if (!bench_fact.empty()) {
      bench_config->fact_file = bench_fact;
      bench_config->file_domain =
          bench_d->count() > 0 ? bench_config->domain_cardinality : 0;
    }
    if (!bench_index.empty()) bench_config->index_file = bench_index;
    CsvSink sink;
    cmd_bench(*bench_config, sink.open(bench_out), std::cerr);
  });

  // model-check -------------------------------------------------------------------
  auto model_config = std::make_shared<ModelCheckConfig>();
  std::string model_out;
  CLI::App* model = app.add_subcommand(
      "model-check", "validate the analytical hit-rate model against the LRU simulator");
  model->add_option("--z", model_config->zs, "Zipf exponents")->delimiter(',');
  model->add_option("--d", model_config->ds, "domain cardinalities")->delimiter(',');
  model->add_option("--s", model_config->ss, "cache capacities in lines")->delimiter(',');
  std::vector<std::string> model_layouts;
  model->add_option("--layouts", model_layouts, "layouts (rand,freq)")->delimiter(',');
  model->add_option("--trace-len", model_config->trace_len, "simulated accesses per point");
  model->add_option("--line-bytes", model_config->line_bytes, "cache line size");
  model->add_option("--element-bytes", model_config->element_bytes, "element width");
  model->add_option("--seed", model_config->seed, "random seed");
  model->add_option("--tolerance", model_config->tolerance, "max |estimate - simulated|");
  model->add_option("--out", model_out, "CSV destination ('-' = stdout)");
  model->callback([model_config, &model_out, &model_layouts] {
    if (!model_layouts.empty()) {
      model_config->layouts.clear();
      for (const std::string& name : model_layouts) {
        model_config->layouts.push_back(kLayoutNames.at(name));
      }
    }
    CsvSink sink;
    const auto rows = cmd_model_check(*model_config, sink.open(model_out), std::cerr);
    if (!all_within_tolerance(rows, model_config->tolerance)) {
      throw CorrectnessError("model-check: a grid point exceeded the tolerance of " +
                             std::to_string(model_config->tolerance));
    }
    std::cerr << "model-check: all " << rows.size() << " grid points within "
              << model_config->tolerance << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CorrectnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCorrectness;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const skewdx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}
