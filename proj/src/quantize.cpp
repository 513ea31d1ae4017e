// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace actpress {

double QuantParams::half_step() const {
  return (static_cast<double>(y_max) - static_cast<double>(y_min)) / (2.0 * max_symbol());
}

void validate_bit_depth(unsigned q) {
  if (q < kMinBitDepth || q > kMaxBitDepth) {
    throw Error(ErrorKind::kParameter,
                "bit depth " + std::to_string(q) + " outside [2, 16]");
  }
}

QuantizedTensor quantize_uniform(const Tensor& y, unsigned q) {
  validate_bit_depth(q);
  const auto values = y.data<float>();
  for (float v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kDomain, "non-finite activation value");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  QuantParams params{*lo, *hi, q};

  std::vector<std::uint32_t> symbols(values.size(), 0);
  const double range = static_cast<double>(params.y_max) - static_cast<double>(params.y_min);
  if (range > 0.0) {
    const double levels = params.max_symbol();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double t = (static_cast<double>(values[i]) - params.y_min) / range * levels;
      symbols[i] = static_cast<std::uint32_t>(std::clamp(std::round(t), 0.0, levels));
    }
  }
  return {Tensor::from_symbols(y.shape(), symbols, q), params};
}

Tensor dequantize_uniform(const Tensor& symbols, const QuantParams& params) {
  validate_bit_depth(params.q);
  const auto s = symbols.symbols();
  const double range = static_cast<double>(params.y_max) - static_cast<double>(params.y_min);
  const double levels = params.max_symbol();
  std::vector<float> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > params.max_symbol()) {
      throw Error(ErrorKind::kDomain, "symbol " + std::to_string(s[i]) + " exceeds 2^q - 1");
    }
    out[i] = range > 0.0 ? static_cast<float>(s[i] * range / levels + params.y_min)
                         : params.y_min;
  }
  return Tensor(symbols.shape(), std::move(out));
}

namespace {

float scale_for(float max_abs, const char* what) {
  if (!(max_abs > 0.0f) || !std::isfinite(max_abs)) {
    throw Error(ErrorKind::kDegenerateScale, std::string(what) + " has no nonzero finite range");
  }
  return 127.0f / max_abs;
}

float max_abs(std::span<const float> v) {
  float m = 0.0f;
  for (float x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

float int8_input_scale(const Tensor& x) { return scale_for(max_abs(x.data<float>()), "input"); }

std::vector<float> int8_weight_scales(const Filter& w) {
  std::vector<float> scales(w.shape.out);
  for (std::uint32_t o = 0; o < w.shape.out; ++o) {
    scales[o] = scale_for(max_abs(w.output(o)), "output channel");
  }
  return scales;
}

std::int8_t quantize_int8(float x, float scale) {
  const double r = std::round(static_cast<double>(scale) * static_cast<double>(x));
  return static_cast<std::int8_t>(std::clamp(r, -127.0, 127.0));
}

Tensor quantize_int8(const Tensor& x, float scale) {
  if (!(scale > 0.0f)) throw Error(ErrorKind::kParameter, "int8 scale must be positive");
  const auto v = x.data<float>();
  std::vector<std::int8_t> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [&](float e) { return quantize_int8(e, scale); });
  return Tensor(x.shape(), std::move(out));
}

Int8Filter quantize_int8(const Filter& w, std::span<const float> scales) {
  if (scales.size() != w.shape.out) {
    throw Error(ErrorKind::kShape, "need one weight scale per output channel");
  }
  Int8Filter out{w.shape, std::vector<std::int8_t>(w.values.size())};
  const std::size_t per = w.shape.per_output();
  for (std::uint32_t o = 0; o < w.shape.out; ++o) {
    if (!(scales[o] > 0.0f)) throw Error(ErrorKind::kParameter, "int8 scale must be positive");
    for (std::size_t i = 0; i < per; ++i) {
      out.values[o * per + i] = quantize_int8(w.values[o * per + i], scales[o]);
    }
  }
  return out;
}

}  // namespace actpress
