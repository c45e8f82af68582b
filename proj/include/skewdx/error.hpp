// Copyright 2026 The Skewdex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewdx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A column value falls outside the dimension domain 1..D.
class DomainViolation : public Error {
 public:
  DomainViolation(std::uint64_t row, std::uint32_t value, std::uint64_t domain)
      : Error("domain violation at row " + std::to_string(row) + ": value " +
              std::to_string(value) + " outside 1.." + std::to_string(domain)),
        row_(row),
        value_(value) {}

  std::uint64_t row() const noexcept { return row_; }
  std::uint32_t value() const noexcept { return value_; }

 private:
  std::uint64_t row_;
  std::uint32_t value_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad magic, unsupported version, or a header that disagrees with the payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewdx
