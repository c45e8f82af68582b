// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 variants of the hot loops. Compiled with -mavx2 into the same library;
// dispatch.cpp only hands out this table after a runtime CPU check. The
// contracts match scalar.cpp exactly: callers pre-validate identifiers and
// the outputs are bit-identical.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <immintrin.h>

#include "skewdx/kernels.hpp"

static_assert(std::endian::native == std::endian::little,
              "bitmap word reinterpretation assumes little-endian");

namespace skewdx::kernels {

namespace {

// For an 8-bit lane mask, the permutation that packs the selected lanes to
// the front of a 256-bit vector of 32-bit elements.
struct CompressLut {
  alignas(32) std::uint32_t perm[256][8];
};

constexpr CompressLut make_compress_lut() {
  CompressLut lut{};
  for (int mask = 0; mask < 256; ++mask) {
    int out = 0;
    for (int lane = 0; lane < 8; ++lane) {
      if (mask & (1 << lane)) lut.perm[mask][out++] = static_cast<std::uint32_t>(lane);
    }
    for (; out < 8; ++out) lut.perm[mask][out] = 0;
  }
  return lut;
}

constexpr CompressLut kCompress = make_compress_lut();

void gather_u32_avx2(const std::uint32_t* fact, std::size_t n,
                     const std::uint32_t* dim, std::uint32_t* out,
                     int /*prefetch_distance*/) {
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i ids =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(fact + k));
    const __m256i idx = _mm256_sub_epi32(ids, one);
    const __m256i vals =
        _mm256_i32gather_epi32(reinterpret_cast<const int*>(dim), idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), vals);
  }
  for (; k < n; ++k) out[k] = dim[fact[k] - 1];
}

std::size_t select_offsets_avx2(const std::uint32_t* fact, std::size_t n,
                                const std::uint64_t* bitmap_words,
                                std::uint32_t base, std::uint32_t* out) {
  const std::uint32_t* words32 = reinterpret_cast<const std::uint32_t*>(bitmap_words);
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i five = _mm256_set1_epi32(5);
  const __m256i low5 = _mm256_set1_epi32(31);
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i ids =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(fact + k));
    const __m256i idx = _mm256_sub_epi32(ids, one);
    const __m256i word_idx = _mm256_srlv_epi32(idx, five);
    const __m256i bit_idx = _mm256_and_si256(idx, low5);
    const __m256i words =
        _mm256_i32gather_epi32(reinterpret_cast<const int*>(words32), word_idx, 4);
    const __m256i bits = _mm256_and_si256(_mm256_srlv_epi32(words, bit_idx), one);
    const __m256i hit = _mm256_cmpeq_epi32(bits, one);
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(hit));

    const __m256i rows =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(base + k)), iota);
    const __m256i perm = _mm256_load_si256(
        reinterpret_cast<const __m256i*>(kCompress.perm[mask]));
    const __m256i packed = _mm256_permutevar8x32_epi32(rows, perm);
    // count <= k, so this unconditional 8-lane store stays within out[0..n).
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + count), packed);
    count += static_cast<unsigned>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; k < n; ++k) {
    const std::uint32_t idx = fact[k] - 1;
    const std::uint64_t bit = (bitmap_words[idx >> 6] >> (idx & 63)) & 1;
    out[count] = base + static_cast<std::uint32_t>(k);
    count += bit;
  }
  return count;
}

std::size_t gather_split_pass1_avx2(const std::uint32_t* fact, std::size_t n,
                                    const std::uint32_t* dim,
                                    std::uint32_t threshold, std::uint32_t* out,
                                    std::uint32_t* miss_pos,
                                    std::uint32_t* miss_id) {
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i th = _mm256_set1_epi32(static_cast<int>(threshold));
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t misses = 0;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i ids =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(fact + k));
    const __m256i cold = _mm256_cmpgt_epi32(ids, th);
    const __m256i idx = _mm256_sub_epi32(ids, one);
    const __m256i hot = _mm256_xor_si256(cold, _mm256_set1_epi32(-1));
    const __m256i vals = _mm256_mask_i32gather_epi32(
        _mm256_setzero_si256(), reinterpret_cast<const int*>(dim), idx, hot, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), vals);

    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(cold));
    const __m256i perm = _mm256_load_si256(
        reinterpret_cast<const __m256i*>(kCompress.perm[mask]));
    const __m256i pos =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(k)), iota);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(miss_pos + misses),
                        _mm256_permutevar8x32_epi32(pos, perm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(miss_id + misses),
                        _mm256_permutevar8x32_epi32(ids, perm));
    misses += static_cast<unsigned>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; k < n; ++k) {
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

constexpr KernelTable kAvx2Table = {
    "avx2",
    &gather_u32_avx2,
    &select_offsets_avx2,
    &gather_split_pass1_avx2,
};

}  // namespace

const KernelTable* avx2_table_detail() noexcept { return &kAvx2Table; }

}  // namespace skewdx::kernels
