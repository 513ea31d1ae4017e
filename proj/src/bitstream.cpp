// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/bitstream.hpp"

#include "actpress/error.hpp"

namespace actpress {

std::string BitString::str() const {
  std::string s(length, '0');
  for (std::size_t i = 0; i < length; ++i) {
    if ((bytes[i >> 3] >> (7 - (i & 7))) & 1) s[i] = '1';
  }
  return s;
}

BitString BitString::from_str(std::string_view bits) {
  BitWriter w;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error(ErrorKind::kParameter, "bit string must be 0/1");
    w.put(ch == '1');
  }
  return std::move(w).finish();
}

void BitWriter::put(bool bit) {
  if ((length_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (length_ & 7));
  ++length_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) put((value >> i) & 1);
}

void BitWriter::put_zeros(std::size_t count) {
  // Padding bits of a fresh byte are already zero.
  const std::size_t total = length_ + count;
  bytes_.resize((total + 7) / 8, 0);
  length_ = total;
}

BitString BitWriter::finish() && { return {std::move(bytes_), length_}; }

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t length)
    : bytes_(bytes), length_(length) {
  if (length > bytes.size() * 8) {
    throw Error(ErrorKind::kCorruption, "bit length exceeds available bytes");
  }
}

bool BitReader::get() {
  if (pos_ >= length_) throw Error(ErrorKind::kCorruption, "bit stream exhausted");
  const bool bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned count) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint64_t>(get());
  return v;
}

}  // namespace actpress
