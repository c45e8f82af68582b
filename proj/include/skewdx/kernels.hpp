// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

namespace skewdx::kernels {

// Inner loops shared by the operators. All kernels assume the caller has
// already validated that every fact value lies in 1..len(dim) (or within the
// bitmap); they perform no bounds checks of their own. Scalar versions are
// the reference semantics; vector variants must produce bit-identical output
// and are selected at runtime.
struct KernelTable {
  const char* name;

  // out[k] = dim[fact[k] - 1]. prefetch_distance > 0 requests software
  // prefetch of the target that many elements ahead; kernels may ignore it.
  void (*gather_u32)(const std::uint32_t* fact, std::size_t n,
                     const std::uint32_t* dim, std::uint32_t* out,
                     int prefetch_distance);

  // Appends base + k for every row k whose bit (fact[k] - 1) is set in the
  // packed little-endian bitmap. Branch-free. `out` must hold n entries.
  // Returns the number of offsets written.
  std::size_t (*select_offsets)(const std::uint32_t* fact, std::size_t n,
                                const std::uint64_t* bitmap_words,
                                std::uint32_t base, std::uint32_t* out);

  // First pass of threshold-split materialization: rows with fact[k] <=
  // threshold are resolved into out[k] immediately; the rest have their
  // position and identifier appended to the miss buffers (each sized n).
  // Returns the miss count. out slots of deferred rows are unspecified.
  std::size_t (*gather_split_pass1)(const std::uint32_t* fact, std::size_t n,
                                    const std::uint32_t* dim,
                                    std::uint32_t threshold, std::uint32_t* out,
                                    std::uint32_t* miss_pos,
                                    std::uint32_t* miss_id);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when the binary or the host lacks AVX2 support.
/// Gather indices are signed 32-bit, so this table requires dim lengths
/// below 2^31; operators fall back to scalar beyond that.
const KernelTable* avx2_kernels() noexcept;

/// Best available table, honoring force_scalar_kernels().
const KernelTable& active_kernels() noexcept;

/// Pins dispatch to the scalar reference kernels (equivalence testing,
/// --no-simd). Not thread-safe against concurrent kernel launches.
void force_scalar_kernels(bool force) noexcept;

bool avx2_supported() noexcept;

}  // namespace skewdx::kernels
