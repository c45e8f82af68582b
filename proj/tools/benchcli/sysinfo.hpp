// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace skewdx::cli {

/// Size of the last-level data cache in bytes, or 0 when unknown.
std::uint64_t llc_cache_bytes();

}  // namespace skewdx::cli
