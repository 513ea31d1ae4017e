// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/pipeline.hpp"

#include <cmath>
#include <string>

#include "actpress/gaussian.hpp"
#include "actpress/quantize.hpp"
#include "actpress/rans.hpp"

namespace actpress {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<CdfTable> tables_for(const ChannelGaussian& model, unsigned q) {
  std::vector<CdfTable> tables;
  tables.reserve(model.channels());
  for (std::size_t c = 0; c < model.channels(); ++c) {
    tables.push_back(build_cdf_table(model.mu[c], model.sigma[c], q));
  }
  return tables;
}

}  // namespace

void PipelineConfig::validate() const {
  if (q < kMinBitDepth || q > kMaxBitDepth) {
    throw Error(ErrorKind::kConfig, "bit depth " + std::to_string(q) + " outside [2, 16]");
  }
  if (const auto* eg = std::get_if<EgCoder>(&coder); eg && eg->k > kMaxEgOrder) {
    throw Error(ErrorKind::kConfig, "EG order " + std::to_string(eg->k) + " above 16");
  }
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw Error(ErrorKind::kConfig, "gamma must be finite and non-negative");
  }
}

CompressedActivation compress(const Tensor& x, const PipelineConfig& cfg) {
  cfg.validate();
  const Tensor y = apply_forward(cfg.transform, x);
  QuantizedTensor qt = quantize_uniform(y, cfg.q);

  CompressedActivation c;
  c.shape = y.shape();
  c.quant = qt.params;
  std::visit(Overloaded{
                 [&](const SymegCoder& s) {
                   c.coder = CoderId::kSymeg;
                   c.param = static_cast<std::uint8_t>(s.selector);
                   SymegPayload p = symeg_encode_tensor(qt.symbols, s.selector);
                   c.references = std::move(p.references);
                   c.payload_bits = p.bits.length;
                   c.payload = std::move(p.bits.bytes);
                 },
                 [&](const EgCoder& e) {
                   c.coder = CoderId::kEg;
                   c.param = static_cast<std::uint8_t>(e.k);
                   BitString bits = eg_encode_tensor(qt.symbols, e.k);
                   c.payload_bits = bits.length;
                   c.payload = std::move(bits.bytes);
                 },
                 [&](const RansGaussianCoder&) {
                   c.coder = CoderId::kRans;
                   c.gaussian = fit_channel_gaussian(qt.symbols);
                   c.payload = rans_encode(qt.symbols, tables_for(c.gaussian, cfg.q));
                   c.payload_bits = 8 * std::uint64_t{c.payload.size()};
                 },
             },
             cfg.coder);
  return c;
}

Tensor decode_symbols(const CompressedActivation& c) {
  const unsigned q = c.quant.q;
  validate_bit_depth(q);
  switch (c.coder) {
    case CoderId::kSymeg:
      if (c.param > static_cast<std::uint8_t>(ReferenceSelector::kMedian)) {
        throw Error(ErrorKind::kFormat, "unknown reference selector code");
      }
      return symeg_decode_tensor(c.payload, c.shape, c.references, q);
    case CoderId::kEg:
      if (c.param > kMaxEgOrder) throw Error(ErrorKind::kFormat, "EG order in header above 16");
      return eg_decode_tensor(c.payload, c.shape, c.param, q);
    case CoderId::kRans:
      for (float s : c.gaussian.sigma) {
        if (!(s >= kSigmaFloor) || !std::isfinite(s)) {
          throw Error(ErrorKind::kCorruption, "sigma below floor in container overhead");
        }
      }
      for (float m : c.gaussian.mu) {
        if (!std::isfinite(m)) throw Error(ErrorKind::kCorruption, "non-finite mu in overhead");
      }
      return rans_decode(c.payload, tables_for(c.gaussian, q), c.shape, q);
  }
  throw Error(ErrorKind::kUnsupported, "coder id");
}

Tensor decompress(const CompressedActivation& c, const PipelineConfig& cfg) {
  return apply_inverse(cfg.transform, dequantize_uniform(decode_symbols(c), c.quant));
}

PenaltyEstimate estimate_penalty(const Tensor& x, const PipelineConfig& cfg) {
  cfg.validate();
  const Tensor y = apply_forward(cfg.transform, x);
  const QuantizedTensor qt = quantize_uniform(y, cfg.q);
  const Shape s = qt.symbols.shape();
  const auto symbols = qt.symbols.symbols();

  PenaltyEstimate e;
  std::visit(Overloaded{
                 [&](const SymegCoder& sc) {
                   std::uint64_t bits = 0;
                   const std::span<const std::uint32_t> all(symbols);
                   for (std::uint32_t c = 0; c < s.c; ++c) {
                     const auto channel = all.subspan(c * s.plane(), s.plane());
                     const auto ref = select_reference(channel, sc.selector);
                     for (auto v : channel) bits += symeg_length(v, ref);
                   }
                   e.bits = static_cast<double>(bits);
                 },
                 [&](const EgCoder& ec) {
                   std::uint64_t bits = 0;
                   for (auto v : symbols) bits += eg_length(v, ec.k);
                   e.bits = static_cast<double>(bits);
                 },
                 [&](const RansGaussianCoder&) {
                   e.bits = estimate_bits_gaussian(qt.symbols, fit_channel_gaussian(qt.symbols),
                                                   cfg.q);
                 },
             },
             cfg.coder);
  e.bits_per_element = e.bits / static_cast<double>(s.size());
  e.normalized = e.bits / static_cast<double>(s.plane());
  e.penalty = cfg.gamma * e.normalized;
  return e;
}

}  // namespace actpress
