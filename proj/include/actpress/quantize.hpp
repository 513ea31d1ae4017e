// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "actpress/tensor.hpp"

namespace actpress {

inline constexpr unsigned kMinBitDepth = 2;
inline constexpr unsigned kMaxBitDepth = 16;

/// Tensor-wide affine range for uniform quantization onto [0, 2^q - 1].
struct QuantParams {
  float y_min = 0.0f;
  float y_max = 0.0f;
  unsigned q = 8;

  std::uint32_t max_symbol() const { return (1u << q) - 1; }
  /// Half of one quantization step, the worst-case reconstruction error.
  double half_step() const;
  bool operator==(const QuantParams&) const = default;
};

void validate_bit_depth(unsigned q);

struct QuantizedTensor {
  Tensor symbols;  // u8 for q <= 8, else u16
  QuantParams params;
};

/// Rounds half away from zero. A constant tensor maps to all-zero symbols.
QuantizedTensor quantize_uniform(const Tensor& y, unsigned q);
Tensor dequantize_uniform(const Tensor& symbols, const QuantParams& params);

/// Symmetric int8 scales: the input scale and one weight scale per output channel.
struct Int8Scales {
  float input = 1.0f;
  std::vector<float> weight;
};

float int8_input_scale(const Tensor& x);
std::vector<float> int8_weight_scales(const Filter& w);

std::int8_t quantize_int8(float x, float scale);
Tensor quantize_int8(const Tensor& x, float scale);
/// Per-output-channel weight quantization; scales.size() must equal O.
Int8Filter quantize_int8(const Filter& w, std::span<const float> scales);

}  // namespace actpress
