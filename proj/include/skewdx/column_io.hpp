// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skewdx/column.hpp"

namespace skewdx {

// Binary column file, little-endian throughout:
//   magic "SKDX" (4 bytes) | version u32 = 1 | element count u64 | count x u32
void write_column(const std::filesystem::path& path, const Column& column);
Column read_column(const std::filesystem::path& path);

// Companion container for 64-bit payloads (ground-truth counts, node-id remap
// tables). Same header shape with magic "SKC8" and u64 elements.
void write_u64_array(const std::filesystem::path& path,
                     std::span<const std::uint64_t> values);
std::vector<std::uint64_t> read_u64_array(const std::filesystem::path& path);

}  // namespace skewdx
