// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "skewdx/column_io.hpp"

namespace skewdx::cli {

namespace {

void write_meta(const std::filesystem::path& path, const std::string& kind,
                std::uint32_t d, std::uint64_t n) {
  nlohmann::json meta{{"kind", kind}, {"domain_cardinality", d}, {"tuple_count", n}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << meta.dump(2) << "\n";
}

[[noreturn]] void malformed(const std::filesystem::path& input, std::uint64_t line_no,
                            const std::string& why) {
  throw FormatError(input.string() + ":" + std::to_string(line_no) + ": " + why);
}

// Splits one CSV record, honoring double-quoted fields with "" escapes.
// Embedded newlines inside quotes are not supported.
std::vector<std::string> split_csv_record(const std::string& line, char delimiter,
                                          const std::filesystem::path& input,
                                          std::uint64_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) malformed(input, line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

IngestResult cmd_ingest_snap(const std::filesystem::path& input,
                             const std::filesystem::path& out_prefix,
                             std::ostream& log) {
  std::ifstream in(input);
  if (!in) throw IoError("cannot open for reading: " + input.string());

  std::unordered_map<std::uint64_t, std::uint32_t> dense;
  std::vector<std::uint64_t> raw_by_dense;
  Column fact;

  auto densify = [&](std::uint64_t raw) -> std::uint32_t {
    auto [it, inserted] = dense.emplace(raw, static_cast<std::uint32_t>(dense.size() + 1));
    if (inserted) {
      if (dense.size() > kMaxDomainCardinality) {
        throw FormatError("node count exceeds the 32-bit identifier space");
      }
      raw_by_dense.push_back(raw);
    }
    return it->second;
  };

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) {
      ++start;
    }
    if (start == line.size() || line[start] == '#') continue;

    std::istringstream fields(line);
    std::uint64_t src = 0, dst = 0;
    if (!(fields >> src >> dst)) {
      malformed(input, line_no, "expected \"src dst\"");
    }
    std::string trailing;
    if (fields >> trailing) {
      malformed(input, line_no, "unexpected trailing field \"" + trailing + "\"");
    }
    densify(src);
    fact.push_back(densify(dst));
  }
  if (fact.empty()) {
    throw FormatError(input.string() + ": no edges found (comments or empty input only)");
  }

  IngestResult result;
  result.domain_cardinality = static_cast<std::uint32_t>(dense.size());
  result.tuple_count = fact.size();
  result.fact_path = out_prefix;
  result.fact_path += ".fact";
  result.aux_path = out_prefix;
  result.aux_path += ".remap";
  result.meta_path = out_prefix;
  result.meta_path += ".meta.json";

  write_column(result.fact_path, fact);
  write_u64_array(result.aux_path, raw_by_dense);
  write_meta(result.meta_path, "snap", result.domain_cardinality, result.tuple_count);

  log << "ingest-snap: " << result.tuple_count << " edges over "
      << result.domain_cardinality << " nodes -> " << result.fact_path.string() << "\n";
  return result;
}

IngestResult cmd_ingest_csv(const std::filesystem::path& input,
                            const std::string& key_column,
                            const std::filesystem::path& out_prefix,
                            char delimiter, std::ostream& log) {
  std::ifstream in(input);
  if (!in) throw IoError("cannot open for reading: " + input.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError(input.string() + ": empty file, expected a header row");
  }
  const auto header = split_csv_record(line, delimiter, input, 1);
  std::size_t key_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    for (std::size_t j = i + 1; j < header.size(); ++j) {
      if (header[i] == header[j]) {
        throw FormatError(input.string() + ": duplicate header name \"" + header[i] + "\"");
      }
    }
    if (header[i] == key_column) key_idx = i;
  }
  if (key_idx == header.size()) {
    throw FormatError(input.string() + ": key column \"" + key_column + "\" not found");
  }

  std::unordered_map<std::string, std::uint32_t> dict;
  std::vector<std::string> keys_by_id;
  Column fact;
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_record(line, delimiter, input, line_no);
    if (fields.size() != header.size()) {
      malformed(input, line_no,
                "expected " + std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    }
    auto [it, inserted] =
        dict.emplace(fields[key_idx], static_cast<std::uint32_t>(dict.size() + 1));
    if (inserted) {
      if (dict.size() > kMaxDomainCardinality) {
        throw FormatError("distinct key count exceeds the 32-bit identifier space");
      }
      keys_by_id.push_back(fields[key_idx]);
    }
    fact.push_back(it->second);
  }
  if (fact.empty()) {
    throw FormatError(input.string() + ": no data rows after the header");
  }

  IngestResult result;
  result.domain_cardinality = static_cast<std::uint32_t>(dict.size());
  result.tuple_count = fact.size();
  result.fact_path = out_prefix;
  result.fact_path += ".fact";
  result.aux_path = out_prefix;
  result.aux_path += ".dict";
  result.meta_path = out_prefix;
  result.meta_path += ".meta.json";

  write_column(result.fact_path, fact);
  std::ofstream dict_out(result.aux_path);
  if (!dict_out) throw IoError("cannot open for writing: " + result.aux_path.string());
  for (const std::string& key : keys_by_id) dict_out << key << "\n";
  write_meta(result.meta_path, "csv", result.domain_cardinality, result.tuple_count);

  log << "ingest-csv: " << result.tuple_count << " rows, " << result.domain_cardinality
      << " distinct keys -> " << result.fact_path.string() << "\n";
  return result;
}

}  // namespace skewdx::cli
