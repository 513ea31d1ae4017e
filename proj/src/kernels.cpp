// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace actpress {
namespace {

constexpr std::uint64_t kInt8AccumulatorLimit = std::uint64_t{1} << 31;

// Calls body(o, oh, ow, acc) after acc has absorbed every in-bounds tap of
// output pixel (o, oh, ow).
template <class Acc, class In, class W, class Body>
void correlate(const FilterShape& f, Shape in_shape, Shape out_shape, std::uint32_t stride,
               std::uint32_t padding, const In* in, const W* w, Body body) {
  const std::size_t in_plane = in_shape.plane();
  for (std::uint32_t o = 0; o < out_shape.c; ++o) {
    const W* filter = w + std::size_t{o} * f.per_output();
    for (std::uint32_t oh = 0; oh < out_shape.h; ++oh) {
      for (std::uint32_t ow = 0; ow < out_shape.w; ++ow) {
        Acc acc{};
        for (std::uint32_t i = 0; i < f.in; ++i) {
          for (std::uint32_t ky = 0; ky < f.kh; ++ky) {
            const std::int64_t y = std::int64_t{oh} * stride + ky - padding;
            if (y < 0 || y >= in_shape.h) continue;
            for (std::uint32_t kx = 0; kx < f.kw; ++kx) {
              const std::int64_t x = std::int64_t{ow} * stride + kx - padding;
              if (x < 0 || x >= in_shape.w) continue;
              acc += static_cast<Acc>(filter[(std::size_t{i} * f.kh + ky) * f.kw + kx]) *
                     static_cast<Acc>(in[i * in_plane + static_cast<std::size_t>(y) * in_shape.w +
                                         static_cast<std::size_t>(x)]);
            }
          }
        }
        body(o, std::size_t{oh} * out_shape.w + ow, acc);
      }
    }
  }
}

float finish(double v, bool relu) {
  const float out = static_cast<float>(v);
  return relu ? std::max(out, 0.0f) : out;
}

}  // namespace

ConvLayer::ConvLayer(Filter weights, std::vector<float> bias, std::uint32_t stride,
                     std::uint32_t padding, bool relu)
    : weights_(std::move(weights)),
      bias_(std::move(bias)),
      stride_(stride),
      padding_(padding),
      relu_(relu) {
  const FilterShape& f = weights_.shape;
  if (f.size() == 0 || weights_.values.size() != f.size()) {
    throw Error(ErrorKind::kShape, "weights do not match O x I x kh x kw");
  }
  if (bias_.empty()) bias_.assign(f.out, 0.0f);
  if (bias_.size() != f.out) throw Error(ErrorKind::kShape, "bias length must equal O");
  if (stride_ == 0) throw Error(ErrorKind::kParameter, "stride must be positive");
  if (std::uint64_t{127} * 127 * f.per_output() >= kInt8AccumulatorLimit) {
    throw Error(ErrorKind::kParameter, "I*kh*kw = " + std::to_string(f.per_output()) +
                                           " can overflow the int32 accumulator");
  }
}

Shape ConvLayer::output_shape(Shape input) const {
  const FilterShape& f = weights_.shape;
  if (input.c != f.in) {
    throw Error(ErrorKind::kShape, "layer expects " + std::to_string(f.in) +
                                       " input channels, got " + std::to_string(input.c));
  }
  const std::int64_t h = std::int64_t{input.h} + 2 * padding_ - f.kh;
  const std::int64_t w = std::int64_t{input.w} + 2 * padding_ - f.kw;
  if (h < 0 || w < 0) throw Error(ErrorKind::kShape, "kernel larger than padded input");
  return {f.out, static_cast<std::uint32_t>(h / stride_ + 1),
          static_cast<std::uint32_t>(w / stride_ + 1)};
}

Tensor conv_f32(const ConvLayer& layer, const Tensor& x) {
  const Shape out_shape = layer.output_shape(x.shape());
  std::vector<float> out(out_shape.size());
  const auto& bias = layer.bias();
  correlate<double>(layer.weights().shape, x.shape(), out_shape, layer.stride(), layer.padding(),
                    x.data<float>().data(), layer.weights().values.data(),
                    [&](std::uint32_t o, std::size_t pixel, double acc) {
                      out[o * out_shape.plane() + pixel] =
                          finish(acc + static_cast<double>(bias[o]), layer.relu());
                    });
  return Tensor(out_shape, std::move(out));
}

Int8Scales compute_int8_scales(const ConvLayer& layer, const Tensor& x) {
  return {int8_input_scale(x), int8_weight_scales(layer.weights())};
}

Tensor conv_int8(const ConvLayer& layer, const Tensor& x, const Int8Scales& scales) {
  const Shape out_shape = layer.output_shape(x.shape());
  if (scales.weight.size() != out_shape.c) {
    throw Error(ErrorKind::kShape, "need one weight scale per output channel");
  }
  const Tensor xq = quantize_int8(x, scales.input);
  const Int8Filter wq = quantize_int8(layer.weights(), scales.weight);
  std::vector<float> out(out_shape.size());
  const auto& bias = layer.bias();
  correlate<std::int32_t>(
      wq.shape, x.shape(), out_shape, layer.stride(), layer.padding(),
      xq.data<std::int8_t>().data(), wq.values.data(),
      [&](std::uint32_t o, std::size_t pixel, std::int32_t acc) {
        const double rescale =
            static_cast<double>(scales.weight[o]) * static_cast<double>(scales.input);
        out[o * out_shape.plane() + pixel] =
            finish(static_cast<double>(acc) / rescale + static_cast<double>(bias[o]),
                   layer.relu());
      });
  return Tensor(out_shape, std::move(out));
}

bool SparseMask::satisfies_constraint() const {
  const std::size_t per = shape.per_output();
  const std::size_t full = m == 0 ? 0 : per / m * m;
  for (std::uint32_t o = 0; o < shape.out; ++o) {
    for (std::size_t g = 0; g < full; g += m) {
      const auto* first = keep.data() + o * per + g;
      if (static_cast<unsigned>(std::count(first, first + m, 1)) > n) return false;
    }
  }
  return true;
}

SparseWeights apply_nm_sparsity(const Filter& w, unsigned n, unsigned m) {
  if (m == 0) throw Error(ErrorKind::kParameter, "group size m must be positive");
  if (n > m) {
    throw Error(ErrorKind::kParameter,
                std::to_string(n) + ":" + std::to_string(m) + " keeps more than the group size");
  }
  SparseWeights out{w, SparseMask{w.shape, n, m, std::vector<std::uint8_t>(w.values.size(), 1)}};
  const std::size_t per = w.shape.per_output();
  const std::size_t full = per / m * m;
  std::vector<std::size_t> order(m);
  for (std::uint32_t o = 0; o < w.shape.out; ++o) {
    for (std::size_t g = 0; g < full; g += m) {
      const std::size_t base = o * per + g;
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(w.values[base + a]) > std::abs(w.values[base + b]);
      });
      for (std::size_t r = n; r < m; ++r) {
        out.mask.keep[base + order[r]] = 0;
        out.weights.values[base + order[r]] = 0.0f;
      }
    }
  }
  return out;
}

}  // namespace actpress
