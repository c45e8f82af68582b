// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "sysinfo.hpp"

#include <fstream>
#include <string>

#if defined(__unix__)
#include <unistd.h>
#endif

namespace skewdx::cli {

namespace {

std::uint64_t parse_cache_size(const std::string& text) {
  if (text.empty()) return 0;
  std::size_t pos = 0;
  const std::uint64_t value = std::stoull(text, &pos);
  std::uint64_t scale = 1;
  if (pos < text.size()) {
    const char unit = text[pos];
    if (unit == 'K') scale = 1024;
    else if (unit == 'M') scale = 1024 * 1024;
    else if (unit == 'G') scale = 1024ull * 1024 * 1024;
  }
  return value * scale;
}

}  // namespace

std::uint64_t llc_cache_bytes() {
  std::uint64_t best = 0;
  int best_level = 0;
  for (int idx = 0; idx < 10; ++idx) {
    const std::string base =
        "/sys/devices/system/cpu/cpu0/cache/index" + std::to_string(idx) + "/";
    std::ifstream level_file(base + "level");
    std::ifstream size_file(base + "size");
    if (!level_file || !size_file) break;
    int level = 0;
    std::string size_text;
    level_file >> level;
    size_file >> size_text;
    if (level >= best_level) {
      const std::uint64_t bytes = parse_cache_size(size_text);
      if (bytes > 0) {
        best_level = level;
        best = bytes;
      }
    }
  }
  if (best > 0) return best;

#if defined(_SC_LEVEL3_CACHE_SIZE)
  for (const int name : {_SC_LEVEL3_CACHE_SIZE, _SC_LEVEL2_CACHE_SIZE}) {
    const long bytes = sysconf(name);
    if (bytes > 0) return static_cast<std::uint64_t>(bytes);
  }
#endif
  return 0;
}

}  // namespace skewdx::cli
