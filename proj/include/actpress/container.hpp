// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "actpress/gaussian.hpp"
#include "actpress/quantize.hpp"
#include "actpress/tensor.hpp"

namespace actpress {

enum class CoderId : std::uint8_t { kSymeg = 0, kEg = 1, kRans = 2 };

const char* to_string(CoderId id);

// Layout, little-endian:
//   "ACTC" | version u8 = 1 | coder u8 | q u8 | k-or-selector u8
//   | C, H, W u16 | y_min f32 | y_max f32
//   | overhead (symeg: C x u32 reference; rans: C x (f32 mu, f32 sigma); eg: none)
//   | payload length u64 | payload | CRC-32 of payload u32
inline constexpr std::size_t kContainerFixedBytes = 34;
inline constexpr std::uint32_t kContainerMaxExtent = 0xffff;

struct CompressedActivation {
  CoderId coder = CoderId::kSymeg;
  std::uint8_t param = 0;  // EG order, or ReferenceSelector code for symeg
  Shape shape;
  QuantParams quant;
  std::vector<std::uint32_t> references;  // symeg only
  ChannelGaussian gaussian;               // rans only
  std::vector<std::uint8_t> payload;
  /// Payload length in bits before byte padding. Not serialized: a parsed
  /// container reports 8 * payload.size().
  std::uint64_t payload_bits = 0;

  std::size_t overhead_bytes() const;
  std::size_t total_bytes() const { return kContainerFixedBytes + overhead_bytes() + payload.size(); }
};

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize(const CompressedActivation& c);
/// Format errors for bad magic/fields, unsupported for unknown version or
/// coder, corruption for truncation or checksum mismatch.
CompressedActivation parse_container(std::span<const std::uint8_t> bytes);

}  // namespace actpress
