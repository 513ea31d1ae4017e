// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/golomb.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace actpress {
namespace {

// Longest zero run accepted by the decoders: values up to 2^32 + 2^16.
constexpr unsigned kMaxPrefix = 33;

// EG-0 of v: (bit_width(v + 1) - 1) zeros, then binary(v + 1).
void put_eg0(BitWriter& out, std::uint64_t v) {
  const std::uint64_t code = v + 1;
  const unsigned width = static_cast<unsigned>(std::bit_width(code));
  out.put_zeros(width - 1);
  out.put_bits(code, width);
}

std::uint64_t get_eg0(BitReader& in) {
  unsigned zeros = 0;
  while (!in.get()) {
    if (++zeros > kMaxPrefix) throw Error(ErrorKind::kCorruption, "Golomb prefix too long");
  }
  const std::uint64_t code = (std::uint64_t{1} << zeros) | in.get_bits(zeros);
  return code - 1;
}

void check_order(unsigned k) {
  if (k > kMaxEgOrder) {
    throw Error(ErrorKind::kParameter, "EG order " + std::to_string(k) + " above 16");
  }
}

void expect_padding_only(const BitReader& in, std::span<const std::uint8_t> payload) {
  if (in.remaining() >= 8) {
    throw Error(ErrorKind::kCorruption,
                std::to_string(in.remaining()) + " unread bits after the last codeword");
  }
  if (in.remaining() > 0) {
    const std::uint8_t mask = static_cast<std::uint8_t>((1u << in.remaining()) - 1);
    if (payload.back() & mask) throw Error(ErrorKind::kCorruption, "nonzero padding bits");
  }
}

std::uint32_t check_symbol(std::int64_t x, unsigned q) {
  if (x < 0 || x > static_cast<std::int64_t>((1u << q) - 1)) {
    throw Error(ErrorKind::kCorruption, "decoded symbol " + std::to_string(x) +
                                            " outside the q-bit alphabet");
  }
  return static_cast<std::uint32_t>(x);
}

}  // namespace

void symeg_encode(BitWriter& out, std::uint32_t x, std::uint32_t ref) {
  const std::int64_t res = std::int64_t{x} - std::int64_t{ref};
  const std::uint64_t z = res < 0 ? 2 * static_cast<std::uint64_t>(-res) + 1
                                  : 2 * static_cast<std::uint64_t>(res);
  put_eg0(out, z);
}

BitString symeg_encode(std::uint32_t x, std::uint32_t ref) {
  BitWriter w;
  symeg_encode(w, x, ref);
  return std::move(w).finish();
}

std::uint32_t symeg_decode(BitReader& in, std::uint32_t ref) {
  const std::uint64_t z = get_eg0(in);
  const std::int64_t res = (z % 2 == 0) ? static_cast<std::int64_t>(z / 2)
                                        : -static_cast<std::int64_t>((z - 1) / 2);
  const std::int64_t x = res + ref;
  if (x < 0 || x > std::int64_t{UINT32_MAX}) {
    throw Error(ErrorKind::kCorruption, "SymEG residual decodes to a negative symbol");
  }
  return static_cast<std::uint32_t>(x);
}

unsigned symeg_length(std::uint32_t x, std::uint32_t ref) {
  auto floor_log2 = [](std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)) - 1; };
  if (x >= ref) return 2 * floor_log2(2 * std::uint64_t{x - ref} + 1) + 1;
  return 2 * floor_log2(2 * std::uint64_t{ref - x} + 2) + 1;
}

void eg_encode(BitWriter& out, std::uint32_t x, unsigned k) {
  check_order(k);
  const std::uint64_t v = std::uint64_t{x} + (std::uint64_t{1} << k);
  const unsigned width = static_cast<unsigned>(std::bit_width(v));
  out.put_zeros(width - 1 - k);
  out.put_bits(v, width);
}

BitString eg_encode(std::uint32_t x, unsigned k) {
  BitWriter w;
  eg_encode(w, x, k);
  return std::move(w).finish();
}

std::uint32_t eg_decode(BitReader& in, unsigned k) {
  check_order(k);
  unsigned zeros = 0;
  while (!in.get()) {
    if (++zeros > kMaxPrefix) throw Error(ErrorKind::kCorruption, "Golomb prefix too long");
  }
  const unsigned tail = zeros + k;
  const std::uint64_t v = (std::uint64_t{1} << tail) | in.get_bits(tail);
  const std::uint64_t x = v - (std::uint64_t{1} << k);
  if (x > UINT32_MAX) throw Error(ErrorKind::kCorruption, "EG value overflows 32 bits");
  return static_cast<std::uint32_t>(x);
}

unsigned eg_length(std::uint32_t x, unsigned k) {
  check_order(k);
  const std::uint64_t v = std::uint64_t{x} + (std::uint64_t{1} << k);
  return 2 * static_cast<unsigned>(std::bit_width(v)) - 1 - k;
}

std::string_view to_string(ReferenceSelector s) {
  switch (s) {
    case ReferenceSelector::kMean: return "mean";
    case ReferenceSelector::kMode: return "mode";
    case ReferenceSelector::kMedian: return "median";
  }
  return "?";
}

ReferenceSelector parse_selector(std::string_view name) {
  if (name == "mean") return ReferenceSelector::kMean;
  if (name == "mode") return ReferenceSelector::kMode;
  if (name == "median") return ReferenceSelector::kMedian;
  throw Error(ErrorKind::kConfig, "unknown reference selector '" + std::string(name) + "'");
}

std::uint32_t select_reference(std::span<const std::uint32_t> symbols,
                               ReferenceSelector selector) {
  if (symbols.empty()) throw Error(ErrorKind::kDomain, "reference of an empty slice");
  switch (selector) {
    case ReferenceSelector::kMean: {
      std::uint64_t sum = 0;
      for (auto s : symbols) sum += s;
      const std::uint64_t n = symbols.size();
      return static_cast<std::uint32_t>((2 * sum + n) / (2 * n));
    }
    case ReferenceSelector::kMode: {
      std::vector<std::uint32_t> sorted(symbols.begin(), symbols.end());
      std::sort(sorted.begin(), sorted.end());
      std::uint32_t best = sorted[0];
      std::size_t best_count = 0;
      for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (j - i > best_count) {
          best_count = j - i;
          best = sorted[i];
        }
        i = j;
      }
      return best;
    }
    case ReferenceSelector::kMedian: {
      std::vector<std::uint32_t> v(symbols.begin(), symbols.end());
      auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
      std::nth_element(v.begin(), mid, v.end());
      return *mid;
    }
  }
  throw Error(ErrorKind::kParameter, "reference selector");
}

SymegPayload symeg_encode_tensor(const Tensor& symbols, ReferenceSelector selector) {
  const auto values = symbols.symbols();
  const Shape s = symbols.shape();
  const std::span<const std::uint32_t> all(values);
  SymegPayload out;
  out.references.reserve(s.c);
  BitWriter w;
  for (std::uint32_t c = 0; c < s.c; ++c) {
    const auto channel = all.subspan(c * s.plane(), s.plane());
    const std::uint32_t ref = select_reference(channel, selector);
    out.references.push_back(ref);
    for (auto x : channel) symeg_encode(w, x, ref);
  }
  out.bits = std::move(w).finish();
  return out;
}

Tensor symeg_decode_tensor(std::span<const std::uint8_t> payload, Shape shape,
                           std::span<const std::uint32_t> references, unsigned q) {
  if (references.size() != shape.c) {
    throw Error(ErrorKind::kCorruption, "reference count does not match channel count");
  }
  BitReader in(payload, payload.size() * 8);
  std::vector<std::uint32_t> symbols;
  symbols.reserve(shape.size());
  for (std::uint32_t c = 0; c < shape.c; ++c) {
    for (std::size_t i = 0; i < shape.plane(); ++i) {
      symbols.push_back(check_symbol(symeg_decode(in, references[c]), q));
    }
  }
  expect_padding_only(in, payload);
  return Tensor::from_symbols(shape, symbols, q);
}

BitString eg_encode_tensor(const Tensor& symbols, unsigned k) {
  BitWriter w;
  for (auto x : symbols.symbols()) eg_encode(w, x, k);
  return std::move(w).finish();
}

Tensor eg_decode_tensor(std::span<const std::uint8_t> payload, Shape shape, unsigned k,
                        unsigned q) {
  BitReader in(payload, payload.size() * 8);
  std::vector<std::uint32_t> symbols;
  symbols.reserve(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) symbols.push_back(check_symbol(eg_decode(in, k), q));
  expect_padding_only(in, payload);
  return Tensor::from_symbols(shape, symbols, q);
}

}  // namespace actpress
