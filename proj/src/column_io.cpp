// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#include "skewdx/column_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "skewdx/error.hpp"

namespace skewdx {

namespace {

constexpr std::array<char, 4> kColumnMagic = {'S', 'K', 'D', 'X'};
constexpr std::array<char, 4> kU64Magic = {'S', 'K', 'C', '8'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "file I/O assumes a little-endian host");

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

void write_header(std::ofstream& out, const std::array<char, 4>& magic,
                  std::uint64_t count) {
  out.write(magic.data(), 4);
  const std::uint32_t version = kFormatVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
}

std::uint64_t read_header(std::ifstream& in, const std::array<char, 4>& magic,
                          const std::filesystem::path& path) {
  std::array<char, 4> got{};
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  in.read(got.data(), 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in) throw FormatError("truncated header: " + path.string());
  if (got != magic) {
    throw FormatError("bad magic in " + path.string() + ": expected \"" +
                      std::string(magic.data(), 4) + "\"");
  }
  if (version != kFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version) +
                      " in " + path.string());
  }
  return count;
}

template <typename T>
void write_values(std::ofstream& out, const T* values, std::uint64_t count) {
  out.write(reinterpret_cast<const char*>(values),
            static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_values(std::ifstream& in, T* values, std::uint64_t count,
                 const std::filesystem::path& path) {
  in.read(reinterpret_cast<char*>(values),
          static_cast<std::streamsize>(count * sizeof(T)));
  if (static_cast<std::uint64_t>(in.gcount()) != count * sizeof(T)) {
    throw FormatError("length mismatch against header in " + path.string());
  }
}

}  // namespace

void write_column(const std::filesystem::path& path, const Column& column) {
  auto out = open_for_write(path);
  write_header(out, kColumnMagic, column.size());
  write_values(out, column.data(), column.size());
  if (!out) throw IoError("write failed: " + path.string());
}

Column read_column(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  const std::uint64_t count = read_header(in, kColumnMagic, path);
  Column column(count);
  read_values(in, column.data(), count, path);
  return column;
}

void write_u64_array(const std::filesystem::path& path,
                     std::span<const std::uint64_t> values) {
  auto out = open_for_write(path);
  write_header(out, kU64Magic, values.size());
  write_values(out, values.data(), values.size());
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::uint64_t> read_u64_array(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  const std::uint64_t count = read_header(in, kU64Magic, path);
  std::vector<std::uint64_t> values(count);
  read_values(in, values.data(), count, path);
  return values;
}

}  // namespace skewdx
