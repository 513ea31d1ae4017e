// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "actpress/tensor.hpp"

namespace actpress {

enum class TransformKind { kIdentity, kConv1x1 };

/// Per-pixel channel mixing y = M x + b with an independently parameterised
/// inverse x = M' y + b'. Matrices are row-major C x C.
class ChannelTransform {
 public:
  /// Exact pass-through for any channel count.
  static ChannelTransform identity();

  static ChannelTransform conv1x1(std::uint32_t channels, std::vector<float> forward,
                                  std::vector<float> forward_bias, std::vector<float> inverse,
                                  std::vector<float> inverse_bias);

  /// Inverse parameters derived numerically from the forward map.
  static ChannelTransform from_forward(std::uint32_t channels, std::vector<float> forward,
                                       std::vector<float> forward_bias);

  TransformKind kind() const { return kind_; }
  std::uint32_t channels() const { return channels_; }
  std::span<const float> forward_matrix() const { return forward_; }
  std::span<const float> forward_bias() const { return forward_bias_; }
  std::span<const float> inverse_matrix() const { return inverse_; }
  std::span<const float> inverse_bias() const { return inverse_bias_; }

 private:
  TransformKind kind_ = TransformKind::kIdentity;
  std::uint32_t channels_ = 0;
  std::vector<float> forward_, forward_bias_, inverse_, inverse_bias_;
};

Tensor apply_forward(const ChannelTransform& t, const Tensor& x);
Tensor apply_inverse(const ChannelTransform& t, const Tensor& y);

/// Decorrelating calibration: rows of the forward matrix are covariance
/// eigenvectors ordered by decreasing eigenvalue, each signed so its largest
/// component is positive. Null-space rows are rebuilt from identity
/// directions by Gram-Schmidt so the matrix stays orthonormal.
ChannelTransform fit_pca_transform(std::span<const Tensor> samples);

// Directory layout: forward.atns (C x C x 1), inverse.atns, and optional
// forward_bias.atns / inverse_bias.atns (C x 1 x 1). Missing biases are zero;
// a missing inverse is computed from the forward map.
ChannelTransform load_transform(const std::filesystem::path& dir);
void save_transform(const ChannelTransform& t, const std::filesystem::path& dir);

}  // namespace actpress
