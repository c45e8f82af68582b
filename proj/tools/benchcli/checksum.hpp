// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "skewdx/mix.hpp"

namespace skewdx::cli {

// Order-dependent FNV-1a over 32-bit elements; used for materialize/select
// results whose order is part of the contract.
inline std::uint64_t rolling_checksum(std::span<const std::uint32_t> values) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const std::uint32_t v : values) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

// Order-independent sum of element hashes; used for aggregate outputs, which
// are equal across layouts only as multisets.
inline std::uint64_t unordered_checksum(std::span<const std::uint64_t> values) noexcept {
  std::uint64_t h = 0;
  for (const std::uint64_t v : values) h += splitmix64(v);
  return h;
}

}  // namespace skewdx::cli
