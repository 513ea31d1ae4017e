// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "actpress/tensor.hpp"

namespace actpress {

/// Lower bound on per-channel sigma, in symbol units.
inline constexpr float kSigmaFloor = 0.05f;
inline constexpr unsigned kCdfPrecisionBits = 16;
inline constexpr std::uint32_t kCdfTotal = 1u << kCdfPrecisionBits;

struct GaussianParams {
  float mu = 0.0f;
  float sigma = kSigmaFloor;
};

/// Per-channel (mu, sigma), broadcast over every pixel of its channel.
struct ChannelGaussian {
  std::vector<float> mu;
  std::vector<float> sigma;

  std::size_t channels() const { return mu.size(); }
  GaussianParams operator[](std::size_t c) const { return {mu[c], sigma[c]}; }
};

/// Sample mean and (n - 1)-normalised standard deviation of channel c,
/// rounded to f32 and floored at kSigmaFloor. Needs H*W >= 2.
GaussianParams channel_stats(const Tensor& t, std::uint32_t c);
ChannelGaussian fit_channel_gaussian(const Tensor& t);

// Normal CDF built only from IEEE basic operations and ldexp, so the same
// inputs give the same bits on every conforming platform. Relative error
// against a reference erfc is below 1e-13 over the tested range.
double deterministic_exp(double x);
double deterministic_erfc(double x);
double normal_cdf(double x);

/// Mass of the unit bin around s under N(mu, sigma); the bins for 0 and
/// 2^q - 1 extend to -inf and +inf.
double symbol_probability(std::uint32_t s, double mu, double sigma, unsigned q);

/// Cross-entropy in bits (negative log-likelihood) of the symbols under the
/// channel model. Each probability is clamped below at 2^-32.
double estimate_bits_gaussian(const Tensor& symbols, const ChannelGaussian& model, unsigned q);

/// Integer frequencies (total 2^16, each >= 1) for the range coder.
struct CdfTable {
  std::vector<std::uint32_t> cdf;  // size alphabet + 1, cdf[0] = 0, cdf.back() = 2^16

  std::uint32_t alphabet() const { return static_cast<std::uint32_t>(cdf.size() - 1); }
  std::uint32_t start(std::uint32_t s) const { return cdf[s]; }
  std::uint32_t freq(std::uint32_t s) const { return cdf[s + 1] - cdf[s]; }
  /// Symbol whose interval contains the slot (slot < 2^16).
  std::uint32_t lookup(std::uint32_t slot) const;
};

CdfTable build_cdf_table(float mu, float sigma, unsigned q);
/// Table from explicit frequencies; each must be >= 1 and they must total 2^16.
CdfTable cdf_from_frequencies(std::span<const std::uint32_t> freqs);

}  // namespace actpress
