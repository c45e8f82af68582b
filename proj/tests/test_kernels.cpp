// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

// Equivalence tests between the scalar reference kernels and the runtime
// vector variants. Every table must produce bit-identical output on the same
// inputs, including ragged tails and degenerate sizes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "skewdx/kernels.hpp"

using namespace skewdx;

namespace {

struct Inputs {
  std::vector<std::uint32_t> fact;
  std::vector<std::uint32_t> dim;
  std::vector<std::uint64_t> bitmap_words;
};

Inputs make_inputs(std::size_t n, std::uint32_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Inputs in;
  in.fact.resize(n);
  for (auto& v : in.fact) v = 1 + static_cast<std::uint32_t>(rng() % d);
  in.dim.resize(d);
  for (auto& v : in.dim) v = static_cast<std::uint32_t>(rng());
  in.bitmap_words.resize((d + 63) / 64);
  for (auto& w : in.bitmap_words) w = rng();
  return in;
}

const kernels::KernelTable* vector_table() { return kernels::avx2_kernels(); }

}  // namespace

TEST_CASE("a kernel table is always available") {
  CHECK(kernels::scalar_kernels().gather_u32 != nullptr);
  CHECK(kernels::active_kernels().gather_u32 != nullptr);

  kernels::force_scalar_kernels(true);
  CHECK(std::string(kernels::active_kernels().name) == "scalar");
  kernels::force_scalar_kernels(false);
  if (kernels::avx2_supported()) {
    CHECK(std::string(kernels::active_kernels().name) == "avx2");
  }
}

TEST_CASE("vector gather matches scalar gather") {
  const auto* vec = vector_table();
  if (!vec) return;  // host without AVX2: dispatch already covered above
  for (const std::size_t n : {0ul, 1ul, 7ul, 8ul, 9ul, 63ul, 64ul, 1000ul, 4097ul}) {
    const auto in = make_inputs(n, 300, 11 + n);
    std::vector<std::uint32_t> a(n), b(n);
    kernels::scalar_kernels().gather_u32(in.fact.data(), n, in.dim.data(), a.data(), 0);
    vec->gather_u32(in.fact.data(), n, in.dim.data(), b.data(), 0);
    CHECK(a == b);
  }
}

TEST_CASE("scalar gather honors the prefetch hint without changing results") {
  const auto in = make_inputs(5000, 1000, 3);
  std::vector<std::uint32_t> plain(5000), hinted(5000);
  kernels::scalar_kernels().gather_u32(in.fact.data(), 5000, in.dim.data(), plain.data(), 0);
  kernels::scalar_kernels().gather_u32(in.fact.data(), 5000, in.dim.data(), hinted.data(), 16);
  CHECK(plain == hinted);
}

TEST_CASE("vector select matches scalar select") {
  const auto* vec = vector_table();
  if (!vec) return;
  for (const std::size_t n : {0ul, 1ul, 5ul, 8ul, 17ul, 256ul, 3001ul}) {
    for (const std::uint32_t d : {1u, 63u, 64u, 65u, 500u}) {
      const auto in = make_inputs(n, d, n * 31 + d);
      std::vector<std::uint32_t> a(n), b(n);
      const std::size_t ca = kernels::scalar_kernels().select_offsets(
          in.fact.data(), n, in.bitmap_words.data(), 100, a.data());
      const std::size_t cb = vec->select_offsets(in.fact.data(), n,
                                                 in.bitmap_words.data(), 100, b.data());
      REQUIRE(ca == cb);
      a.resize(ca);
      b.resize(cb);
      CHECK(a == b);
    }
  }
}

TEST_CASE("vector split pass matches scalar split pass") {
  const auto* vec = vector_table();
  if (!vec) return;
  for (const std::size_t n : {0ul, 1ul, 8ul, 100ul, 2048ul, 2049ul}) {
    for (const std::uint32_t threshold : {1u, 10u, 200u, 400u}) {
      const auto in = make_inputs(n, 400, n + threshold);
      std::vector<std::uint32_t> out_a(n), pos_a(n), id_a(n);
      std::vector<std::uint32_t> out_b(n), pos_b(n), id_b(n);
      const std::size_t ma = kernels::scalar_kernels().gather_split_pass1(
          in.fact.data(), n, in.dim.data(), threshold, out_a.data(), pos_a.data(),
          id_a.data());
      const std::size_t mb = vec->gather_split_pass1(in.fact.data(), n, in.dim.data(),
                                                     threshold, out_b.data(),
                                                     pos_b.data(), id_b.data());
      REQUIRE(ma == mb);
      pos_a.resize(ma);
      pos_b.resize(mb);
      id_a.resize(ma);
      id_b.resize(mb);
      CHECK(pos_a == pos_b);
      CHECK(id_a == id_b);
      // resolved (hot) slots must match; deferred slots are unspecified
      std::vector<bool> deferred(n, false);
      for (const std::uint32_t p : pos_a) deferred[p] = true;
      bool hot_equal = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (!deferred[k] && out_a[k] != out_b[k]) hot_equal = false;
      }
      CHECK(hot_equal);
    }
  }
}
