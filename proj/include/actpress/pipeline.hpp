// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>

#include "actpress/container.hpp"
#include "actpress/golomb.hpp"
#include "actpress/tensor.hpp"
#include "actpress/transform.hpp"

namespace actpress {

struct SymegCoder {
  ReferenceSelector selector = ReferenceSelector::kMedian;
};
struct EgCoder {
  unsigned k = 4;
};
struct RansGaussianCoder {};

using CoderSpec = std::variant<SymegCoder, EgCoder, RansGaussianCoder>;

struct PipelineConfig {
  ChannelTransform transform = ChannelTransform::identity();
  unsigned q = 8;
  CoderSpec coder = SymegCoder{};
  double gamma = 0.0;  // penalty weight

  /// Config error for q outside [2, 16], EG order above 16, negative or
  /// non-finite gamma.
  void validate() const;
};

/// transform -> uniform quantization -> entropy coding.
CompressedActivation compress(const Tensor& x, const PipelineConfig& cfg);

/// Entropy-decoded symbols, bit-exact with the encoder's quantizer output.
Tensor decode_symbols(const CompressedActivation& c);

/// Symbols -> dequantize -> inverse transform from cfg.
Tensor decompress(const CompressedActivation& c, const PipelineConfig& cfg);

struct PenaltyEstimate {
  double bits = 0.0;               // Gaussian cross-entropy or exact Golomb length
  double bits_per_element = 0.0;
  double normalized = 0.0;         // bits / (b * h * w), b = 1
  double penalty = 0.0;            // gamma * normalized
};

PenaltyEstimate estimate_penalty(const Tensor& x, const PipelineConfig& cfg);

}  // namespace actpress
