// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "actpress/quantize.hpp"
#include "actpress/tensor.hpp"

namespace actpress {

/// 2-d cross-correlation layer (no kernel flip) with zero padding.
class ConvLayer {
 public:
  /// Rejects layers whose int8 accumulator could leave int32:
  /// 127 * 127 * I * kh * kw must stay below 2^31.
  ConvLayer(Filter weights, std::vector<float> bias, std::uint32_t stride = 1,
            std::uint32_t padding = 0, bool relu = false);

  const Filter& weights() const { return weights_; }
  const std::vector<float>& bias() const { return bias_; }
  std::uint32_t stride() const { return stride_; }
  std::uint32_t padding() const { return padding_; }
  bool relu() const { return relu_; }

  Shape output_shape(Shape input) const;

 private:
  Filter weights_;
  std::vector<float> bias_;
  std::uint32_t stride_;
  std::uint32_t padding_;
  bool relu_;
};

Tensor conv_f32(const ConvLayer& layer, const Tensor& x);

/// Scales from the data: 127 / max|x| and 127 / max|w_o| per output channel.
Int8Scales compute_int8_scales(const ConvLayer& layer, const Tensor& x);

/// Quantizes x and the weights to [-127, 127], accumulates in int32 and
/// rescales each output channel by 1 / (s_weight[o] * s_input) before the bias.
Tensor conv_int8(const ConvLayer& layer, const Tensor& x, const Int8Scales& scales);

/// Keep flags over the filter; every run of m along the flattened I*kh*kw
/// axis of a filter holds at most n kept entries. A trailing partial run is
/// left dense.
struct SparseMask {
  FilterShape shape;
  unsigned n = 2;
  unsigned m = 4;
  std::vector<std::uint8_t> keep;

  bool satisfies_constraint() const;
};

struct SparseWeights {
  Filter weights;
  SparseMask mask;
};

/// Magnitude projection onto n:m sparsity; ties keep the lower index.
SparseWeights apply_nm_sparsity(const Filter& w, unsigned n, unsigned m);

}  // namespace actpress
