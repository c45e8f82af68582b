// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/permindex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <numeric>

#include "skewdx/error.hpp"
#include "skewdx/kernels.hpp"
#include "skewdx/operators.hpp"

namespace skewdx {

FrequencyProfile count_frequencies(const Column& fact, std::uint32_t domain_cardinality) {
  FrequencyProfile profile;
  profile.counts.assign(domain_cardinality, 0);
  profile.total = fact.size();
  for (std::size_t k = 0; k < fact.size(); ++k) {
    const std::uint32_t id = fact[k];
    if (id - 1 >= domain_cardinality) {  // id 0 wraps and is caught too
      throw DomainViolation(k, id, domain_cardinality);
    }
    ++profile.counts[id - 1];
  }
  return profile;
}

PermutationIndex build_index(const FrequencyProfile& profile) {
  if (profile.counts.size() > kMaxDomainCardinality) {
    throw InvalidArgument("frequency profile exceeds the 32-bit identifier space");
  }
  const std::uint64_t sum = std::accumulate(profile.counts.begin(), profile.counts.end(),
                                            std::uint64_t{0});
  if (sum != profile.total) {
    throw InvalidArgument("frequency profile counts do not sum to its total");
  }
  const std::uint32_t d = static_cast<std::uint32_t>(profile.counts.size());

  PermutationIndex index;
  index.offsets.resize(d);
  std::iota(index.offsets.begin(), index.offsets.end(), 1u);
  std::sort(index.offsets.begin(), index.offsets.end(),
            [&counts = profile.counts](std::uint32_t a, std::uint32_t b) {
              const std::uint64_t ca = counts[a - 1];
              const std::uint64_t cb = counts[b - 1];
              return ca != cb ? ca > cb : a < b;
            });

  index.ranks.resize(d);
  for (std::uint32_t r = 0; r < d; ++r) {
    index.ranks[index.offsets[r] - 1] = r + 1;
  }
  return index;
}

Column recode_fact(const Column& fact, const PermutationIndex& index) {
  // Identifier replacement is itself a materialization with the rank array
  // as the looked-up column.
  return materialize(fact, index.ranks);
}

Column permute_dimension(const Column& dim, const PermutationIndex& index) {
  if (dim.size() != index.offsets.size()) {
    throw InvalidArgument("dimension length " + std::to_string(dim.size()) +
                          " does not match index cardinality " +
                          std::to_string(index.offsets.size()));
  }
  return materialize(index.offsets, dim);
}

std::uint32_t append_dimension_row(PermutationIndex& index) {
  const std::uint32_t d = index.domain_cardinality();
  if (d >= kMaxDomainCardinality) {
    throw Error("identifier space exhausted");
  }
  const std::uint32_t id = d + 1;
  index.offsets.push_back(id);  // new least-frequent item: rank == id
  index.ranks.push_back(id);
  return id;
}

PermutationIndex rebuild(const Column& fact, std::uint32_t domain_cardinality) {
  return build_index(count_frequencies(fact, domain_cardinality));
}

namespace {

constexpr std::array<char, 4> kIndexMagic = {'S', 'K', 'P', 'I'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "file I/O assumes a little-endian host");

}  // namespace

void write_index(const std::filesystem::path& path, const PermutationIndex& index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(kIndexMagic.data(), 4);
  const std::uint32_t version = kFormatVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  const std::uint64_t d = index.offsets.size();
  out.write(reinterpret_cast<const char*>(&d), sizeof d);
  out.write(reinterpret_cast<const char*>(index.offsets.data()),
            static_cast<std::streamsize>(d * 4));
  out.write(reinterpret_cast<const char*>(index.ranks.data()),
            static_cast<std::streamsize>(d * 4));
  if (!out) throw IoError("write failed: " + path.string());
}

PermutationIndex read_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::array<char, 4> magic{};
  std::uint32_t version = 0;
  std::uint64_t d = 0;
  in.read(magic.data(), 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&d), sizeof d);
  if (!in) throw FormatError("truncated header: " + path.string());
  if (magic != kIndexMagic) throw FormatError("bad magic in " + path.string());
  if (version != kFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version) +
                      " in " + path.string());
  }
  if (d > kMaxDomainCardinality) {
    throw FormatError("index cardinality out of range in " + path.string());
  }

  PermutationIndex index;
  index.offsets.resize(d);
  index.ranks.resize(d);
  in.read(reinterpret_cast<char*>(index.offsets.data()), static_cast<std::streamsize>(d * 4));
  in.read(reinterpret_cast<char*>(index.ranks.data()), static_cast<std::streamsize>(d * 4));
  if (!in && d > 0) throw FormatError("length mismatch against header in " + path.string());

  for (std::uint64_t r = 0; r < d; ++r) {
    const std::uint32_t id = index.offsets[r];
    if (id == 0 || id > d || index.ranks[id - 1] != r + 1) {
      throw FormatError("offsets/ranks are not inverse bijections in " + path.string());
    }
  }
  return index;
}

}  // namespace skewdx
