// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/rans.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace actpress {

void RansEncoder::push(std::uint32_t symbol, const CdfTable& table) {
  if (symbol >= table.alphabet()) {
    throw Error(ErrorKind::kDomain, "symbol " + std::to_string(symbol) + " outside alphabet of " +
                                        std::to_string(table.alphabet()));
  }
  const std::uint32_t freq = table.freq(symbol);
  const std::uint64_t x_max = std::uint64_t{(kRansLowerBound >> kCdfPrecisionBits) << 8} * freq;
  std::uint32_t x = state_;
  while (x >= x_max) {
    reversed_.push_back(static_cast<std::uint8_t>(x & 0xff));
    x >>= 8;
  }
  state_ = ((x / freq) << kCdfPrecisionBits) + (x % freq) + table.start(symbol);
}

std::vector<std::uint8_t> RansEncoder::finish() && {
  for (int shift = 24; shift >= 0; shift -= 8) {
    reversed_.push_back(static_cast<std::uint8_t>(state_ >> shift));
  }
  std::reverse(reversed_.begin(), reversed_.end());
  return std::move(reversed_);
}

RansDecoder::RansDecoder(std::span<const std::uint8_t> payload) : in_(payload) {
  if (in_.size() < kRansFlushBytes) {
    throw Error(ErrorKind::kCorruption, "rANS payload shorter than its state flush");
  }
  for (int i = 0; i < 4; ++i) state_ |= std::uint32_t{in_[pos_++]} << (8 * i);
  if (state_ < kRansLowerBound) throw Error(ErrorKind::kCorruption, "rANS initial state too small");
}

std::uint32_t RansDecoder::pop(const CdfTable& table) {
  const std::uint32_t slot = state_ & (kCdfTotal - 1);
  const std::uint32_t symbol = table.lookup(slot);
  state_ = table.freq(symbol) * (state_ >> kCdfPrecisionBits) + slot - table.start(symbol);
  while (state_ < kRansLowerBound) {
    if (pos_ >= in_.size()) throw Error(ErrorKind::kCorruption, "rANS payload exhausted");
    state_ = (state_ << 8) | in_[pos_++];
  }
  return symbol;
}

void RansDecoder::finish() const {
  if (state_ != kRansLowerBound || pos_ != in_.size()) {
    throw Error(ErrorKind::kCorruption, "rANS stream desynchronised (table or payload mismatch)");
  }
}

namespace {

void check_counts(std::size_t symbols, std::span<const CdfTable> tables,
                  std::span<const std::size_t> counts) {
  if (tables.size() != counts.size()) {
    throw Error(ErrorKind::kParameter, "one symbol count per table required");
  }
  if (std::accumulate(counts.begin(), counts.end(), std::size_t{0}) != symbols) {
    throw Error(ErrorKind::kParameter, "symbol counts do not cover the stream");
  }
}

}  // namespace

std::vector<std::uint8_t> rans_encode(std::span<const std::uint32_t> symbols,
                                      std::span<const CdfTable> tables,
                                      std::span<const std::size_t> counts) {
  check_counts(symbols.size(), tables, counts);
  RansEncoder enc;
  std::size_t end = symbols.size();
  for (std::size_t t = tables.size(); t-- > 0;) {
    const std::size_t begin = end - counts[t];
    for (std::size_t i = end; i-- > begin;) enc.push(symbols[i], tables[t]);
    end = begin;
  }
  return std::move(enc).finish();
}

std::vector<std::uint32_t> rans_decode(std::span<const std::uint8_t> payload,
                                       std::span<const CdfTable> tables,
                                       std::span<const std::size_t> counts) {
  if (tables.size() != counts.size()) {
    throw Error(ErrorKind::kParameter, "one symbol count per table required");
  }
  RansDecoder dec(payload);
  std::vector<std::uint32_t> out;
  out.reserve(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (std::size_t i = 0; i < counts[t]; ++i) out.push_back(dec.pop(tables[t]));
  }
  dec.finish();
  return out;
}

std::vector<std::uint8_t> rans_encode(const Tensor& symbols, std::span<const CdfTable> tables) {
  const Shape s = symbols.shape();
  if (tables.size() != s.c) throw Error(ErrorKind::kShape, "need one CDF table per channel");
  const std::vector<std::size_t> counts(s.c, s.plane());
  return rans_encode(symbols.symbols(), tables, counts);
}

Tensor rans_decode(std::span<const std::uint8_t> payload, std::span<const CdfTable> tables,
                   Shape shape, unsigned q) {
  if (tables.size() != shape.c) throw Error(ErrorKind::kShape, "need one CDF table per channel");
  const std::vector<std::size_t> counts(shape.c, shape.plane());
  const auto symbols = rans_decode(payload, tables, counts);
  for (auto s : symbols) {
    if (s >= (1u << q)) throw Error(ErrorKind::kCorruption, "decoded symbol outside alphabet");
  }
  return Tensor::from_symbols(shape, symbols, q);
}

}  // namespace actpress
