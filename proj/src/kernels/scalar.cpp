// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstddef>
#include <cstdint>

#include "skewdx/kernels.hpp"

namespace skewdx::kernels {

namespace {

void gather_u32_scalar(const std::uint32_t* fact, std::size_t n,
                       const std::uint32_t* dim, std::uint32_t* out,
                       int prefetch_distance) {
  if (prefetch_distance > 0) {
    const std::size_t pd = static_cast<std::size_t>(prefetch_distance);
    const std::size_t body = n > pd ? n - pd : 0;
    for (std::size_t k = 0; k < body; ++k) {
      __builtin_prefetch(&dim[fact[k + pd] - 1], 0, 0);
      out[k] = dim[fact[k] - 1];
    }
    for (std::size_t k = body; k < n; ++k) out[k] = dim[fact[k] - 1];
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = dim[fact[k] - 1];
  }
}

std::size_t select_offsets_scalar(const std::uint32_t* fact, std::size_t n,
                                  const std::uint64_t* bitmap_words,
                                  std::uint32_t base, std::uint32_t* out) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t idx = fact[k] - 1;
    const std::uint64_t bit = (bitmap_words[idx >> 6] >> (idx & 63)) & 1;
    out[count] = base + static_cast<std::uint32_t>(k);
    count += bit;
  }
  return count;
}

std::size_t gather_split_pass1_scalar(const std::uint32_t* fact, std::size_t n,
                                      const std::uint32_t* dim,
                                      std::uint32_t threshold, std::uint32_t* out,
                                      std::uint32_t* miss_pos,
                                      std::uint32_t* miss_id) {
  std::size_t misses = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t id = fact[k];
    if (id <= threshold) {
      out[k] = dim[id - 1];
    } else {
      miss_pos[misses] = static_cast<std::uint32_t>(k);
      miss_id[misses] = id;
      ++misses;
    }
  }
  return misses;
}

constexpr KernelTable kScalarTable = {
    "scalar",
    &gather_u32_scalar,
    &select_offsets_scalar,
    &gather_split_pass1_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalarTable; }

}  // namespace skewdx::kernels
