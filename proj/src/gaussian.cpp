// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "actpress/quantize.hpp"

namespace actpress {
namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kInvSqrtPi = 0.564189583547756286948;
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kInvSqrt2 = 0.707106781186547524401;
constexpr double kMinProbability = 2.3283064365386963e-10;  // 2^-32

// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (2n+1)!!, all terms positive.
double erf_series(double x) {
  double term = x;
  double sum = x;
  const double two_x2 = 2.0 * x * x;
  for (int n = 1; n < 400; ++n) {
    term = term * two_x2 / (2 * n + 1);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * deterministic_exp(-x * x) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0.
double erfc_continued_fraction(double x) {
  double f = x;
  for (int n = 120; n >= 1; --n) f = x + (0.5 * n) / f;
  return kInvSqrtPi * deterministic_exp(-x * x) / f;
}

template <class T>
GaussianParams stats_of(std::span<const T> v) {
  if (v.size() < 2) throw Error(ErrorKind::kDomain, "channel statistics need H*W >= 2");
  double sum = 0.0;
  for (T x : v) sum += static_cast<double>(x);
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (T x : v) {
    const double d = static_cast<double>(x) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {static_cast<float>(mean), std::max(static_cast<float>(sd), kSigmaFloor)};
}

}  // namespace

double deterministic_exp(double x) {
  if (x < -745.2) return 0.0;
  if (x > 709.7) return std::numeric_limits<double>::infinity();
  const double k = std::floor(x * kLog2e + 0.5);
  const double r = (x - k * kLn2Hi) - k * kLn2Lo;
  // Taylor series to degree 20; |r| <= 0.35 so the truncation error is far below 1 ulp.
  double p = 1.0;
  for (int n = 20; n >= 1; --n) p = 1.0 + p * r / n;
  return std::ldexp(p, static_cast<int>(k));
}

double deterministic_erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - deterministic_erfc(-x);
  if (x < 1.25) return 1.0 - erf_series(x);
  if (x > 27.3) return 0.0;
  return erfc_continued_fraction(x);
}

double normal_cdf(double x) { return 0.5 * deterministic_erfc(-x * kInvSqrt2); }

GaussianParams channel_stats(const Tensor& t, std::uint32_t c) {
  if (c >= t.shape().c) throw Error(ErrorKind::kShape, "channel index out of range");
  switch (t.dtype()) {
    case DType::kF32: return stats_of(t.channel<float>(c));
    case DType::kU8: return stats_of(t.channel<std::uint8_t>(c));
    case DType::kU16: return stats_of(t.channel<std::uint16_t>(c));
    case DType::kI8: return stats_of(t.channel<std::int8_t>(c));
    case DType::kI32: return stats_of(t.channel<std::int32_t>(c));
  }
  throw Error(ErrorKind::kUnsupported, "dtype");
}

ChannelGaussian fit_channel_gaussian(const Tensor& t) {
  ChannelGaussian m;
  for (std::uint32_t c = 0; c < t.shape().c; ++c) {
    const auto p = channel_stats(t, c);
    m.mu.push_back(p.mu);
    m.sigma.push_back(p.sigma);
  }
  return m;
}

double symbol_probability(std::uint32_t s, double mu, double sigma, unsigned q) {
  validate_bit_depth(q);
  const std::uint32_t top = (1u << q) - 1;
  if (s > top) throw Error(ErrorKind::kDomain, "symbol outside the q-bit alphabet");
  const double lo = (static_cast<double>(s) - 0.5 - mu) / sigma;
  const double hi = (static_cast<double>(s) + 0.5 - mu) / sigma;
  const bool open_lo = s == 0;
  const bool open_hi = s == top;
  if (open_lo && open_hi) return 1.0;
  // Evaluate on the side of the nearer tail to keep relative precision.
  if (!open_lo && lo > 0.0) {
    return normal_cdf(-lo) - (open_hi ? 0.0 : normal_cdf(-hi));
  }
  return (open_hi ? 1.0 : normal_cdf(hi)) - (open_lo ? 0.0 : normal_cdf(lo));
}

double estimate_bits_gaussian(const Tensor& symbols, const ChannelGaussian& model, unsigned q) {
  const Shape s = symbols.shape();
  if (model.channels() != s.c) {
    throw Error(ErrorKind::kShape, "model has " + std::to_string(model.channels()) +
                                       " channels, tensor has " + std::to_string(s.c));
  }
  const auto values = symbols.symbols();
  const std::uint32_t alphabet = 1u << q;
  double bits = 0.0;
  std::vector<double> cost;
  for (std::uint32_t c = 0; c < s.c; ++c) {
    // Cost per symbol value is cached per channel; alphabets are at most 2^16.
    cost.assign(alphabet, -1.0);
    for (std::size_t i = 0; i < s.plane(); ++i) {
      const std::uint32_t v = values[c * s.plane() + i];
      if (v >= alphabet) throw Error(ErrorKind::kDomain, "symbol outside the q-bit alphabet");
      if (cost[v] < 0.0) {
        const double p = symbol_probability(v, model.mu[c], model.sigma[c], q);
        cost[v] = -std::log2(std::max(p, kMinProbability));
      }
      bits += cost[v];
    }
  }
  return bits;
}

std::uint32_t CdfTable::lookup(std::uint32_t slot) const {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), slot);
  return static_cast<std::uint32_t>(it - cdf.begin()) - 1;
}

CdfTable build_cdf_table(float mu, float sigma, unsigned q) {
  validate_bit_depth(q);
  if (!(sigma >= kSigmaFloor) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw Error(ErrorKind::kDomain, "Gaussian parameters must be finite with sigma >= floor");
  }
  const std::uint32_t alphabet = 1u << q;
  const double spread = static_cast<double>(kCdfTotal - alphabet);
  std::vector<std::uint32_t> freq(alphabet);
  std::int64_t total = 0;
  for (std::uint32_t s = 0; s < alphabet; ++s) {
    const double p = symbol_probability(s, mu, sigma, q);
    freq[s] = 1 + static_cast<std::uint32_t>(std::floor(std::clamp(p, 0.0, 1.0) * spread));
    total += freq[s];
  }
  // Rounding slack goes to (or comes from) the largest bin, lowest index on ties.
  const auto peak = std::max_element(freq.begin(), freq.end());
  *peak = static_cast<std::uint32_t>(static_cast<std::int64_t>(*peak) + (kCdfTotal - total));
  return cdf_from_frequencies(freq);
}

CdfTable cdf_from_frequencies(std::span<const std::uint32_t> freqs) {
  if (freqs.empty()) throw Error(ErrorKind::kParameter, "empty frequency table");
  CdfTable t;
  t.cdf.resize(freqs.size() + 1);
  std::uint64_t run = 0;
  for (std::size_t s = 0; s < freqs.size(); ++s) {
    if (freqs[s] == 0) throw Error(ErrorKind::kParameter, "zero frequency");
    t.cdf[s] = static_cast<std::uint32_t>(run);
    run += freqs[s];
    if (run > kCdfTotal) throw Error(ErrorKind::kParameter, "frequencies exceed 2^16");
  }
  if (run != kCdfTotal) throw Error(ErrorKind::kParameter, "frequencies must total 2^16");
  t.cdf.back() = static_cast<std::uint32_t>(run);
  return t;
}

}  // namespace actpress
