// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>

#include "skewdx/kernels.hpp"

namespace skewdx::kernels {

#if SKEWDX_HAVE_AVX2
const KernelTable* avx2_table_detail() noexcept;  // defined in avx2.cpp
#endif

namespace {
std::atomic<bool> g_force_scalar{false};
}

bool avx2_supported() noexcept {
#if SKEWDX_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported;
#else
  return false;
#endif
}

const KernelTable* avx2_kernels() noexcept {
#if SKEWDX_HAVE_AVX2
  return avx2_supported() ? avx2_table_detail() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  if (!g_force_scalar.load(std::memory_order_relaxed)) {
    if (const KernelTable* table = avx2_kernels()) return *table;
  }
  return scalar_kernels();
}

void force_scalar_kernels(bool force) noexcept {
  g_force_scalar.store(force, std::memory_order_relaxed);
}

}  // namespace skewdx::kernels
