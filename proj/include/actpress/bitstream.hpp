// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace actpress {

/// Bits packed MSB-first, final byte zero-padded.
struct BitString {
  std::vector<std::uint8_t> bytes;
  std::size_t length = 0;

  /// "0"/"1" characters, for tests and diagnostics.
  std::string str() const;
  static BitString from_str(std::string_view bits);
  bool operator==(const BitString&) const = default;
};

class BitWriter {
 public:
  void put(bool bit);
  /// Writes the low `count` bits of `value`, most significant first.
  void put_bits(std::uint64_t value, unsigned count);
  void put_zeros(std::size_t count);

  std::size_t length() const { return length_; }
  BitString finish() &&;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t length_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t length);
  explicit BitReader(const BitString& bits) : BitReader(bits.bytes, bits.length) {}

  /// Throws a corruption error when the stream is exhausted.
  bool get();
  std::uint64_t get_bits(unsigned count);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return length_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t length_;
  std::size_t pos_ = 0;
};

}  // namespace actpress
