// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "actpress/gaussian.hpp"
#include "actpress/tensor.hpp"

namespace actpress {

// Byte-wise rANS with a 32-bit state kept in [2^23, 2^31) and 16-bit
// frequencies. The encoder runs last symbol first and emits bytes in reverse;
// the payload it returns is already in decoder order, so symbols come back
// in the order they were given.
inline constexpr std::uint32_t kRansLowerBound = 1u << 23;
inline constexpr std::size_t kRansFlushBytes = 4;

class RansEncoder {
 public:
  /// Symbols must be pushed in reverse of their decode order.
  void push(std::uint32_t symbol, const CdfTable& table);
  /// Final payload in decode order; the encoder is spent afterwards.
  std::vector<std::uint8_t> finish() &&;

 private:
  std::uint32_t state_ = kRansLowerBound;
  std::vector<std::uint8_t> reversed_;
};

class RansDecoder {
 public:
  explicit RansDecoder(std::span<const std::uint8_t> payload);

  std::uint32_t pop(const CdfTable& table);
  /// Throws corruption unless the state returned to its initial value and
  /// every payload byte was consumed.
  void finish() const;

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t state_ = 0;
};

/// `counts[i]` symbols use `tables[i]`, in order.
std::vector<std::uint8_t> rans_encode(std::span<const std::uint32_t> symbols,
                                      std::span<const CdfTable> tables,
                                      std::span<const std::size_t> counts);
std::vector<std::uint32_t> rans_decode(std::span<const std::uint8_t> payload,
                                       std::span<const CdfTable> tables,
                                       std::span<const std::size_t> counts);

/// One table per channel, channel-major order.
std::vector<std::uint8_t> rans_encode(const Tensor& symbols, std::span<const CdfTable> tables);
Tensor rans_decode(std::span<const std::uint8_t> payload, std::span<const CdfTable> tables,
                   Shape shape, unsigned q);

}  // namespace actpress
