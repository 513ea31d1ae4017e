// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "actpress/bitstream.hpp"
#include "actpress/tensor.hpp"

namespace actpress {

// Symmetric exponential Golomb: the signed residual x - ref is folded onto
// non-negative integers (r >= 0 -> 2r, r < 0 -> 2|r| + 1) and coded with EG-0.

BitString symeg_encode(std::uint32_t x, std::uint32_t ref);
void symeg_encode(BitWriter& out, std::uint32_t x, std::uint32_t ref);
std::uint32_t symeg_decode(BitReader& in, std::uint32_t ref);

/// Closed-form codeword length; x == ref takes the x > ref branch (1 bit).
unsigned symeg_length(std::uint32_t x, std::uint32_t ref);

// k-th order exponential Golomb.
BitString eg_encode(std::uint32_t x, unsigned k);
void eg_encode(BitWriter& out, std::uint32_t x, unsigned k);
std::uint32_t eg_decode(BitReader& in, unsigned k);
unsigned eg_length(std::uint32_t x, unsigned k);

inline constexpr unsigned kMaxEgOrder = 16;

enum class ReferenceSelector : std::uint8_t { kMean = 0, kMode = 1, kMedian = 2 };

std::string_view to_string(ReferenceSelector s);
ReferenceSelector parse_selector(std::string_view name);

/// mean: rounded half away from zero; mode: smallest of the most frequent;
/// median: lower middle of the sorted values.
std::uint32_t select_reference(std::span<const std::uint32_t> symbols, ReferenceSelector selector);

struct SymegPayload {
  BitString bits;
  std::vector<std::uint32_t> references;  // one per channel
};

/// Channel-major, row-major within a channel.
SymegPayload symeg_encode_tensor(const Tensor& symbols, ReferenceSelector selector);
/// Throws corruption if the stream is short, leaves more than the final
/// byte's padding unread, or yields a symbol outside [0, 2^q - 1].
Tensor symeg_decode_tensor(std::span<const std::uint8_t> payload, Shape shape,
                           std::span<const std::uint32_t> references, unsigned q);

BitString eg_encode_tensor(const Tensor& symbols, unsigned k);
Tensor eg_decode_tensor(std::span<const std::uint8_t> payload, Shape shape, unsigned k,
                        unsigned q);

}  // namespace actpress
