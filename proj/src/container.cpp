// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/container.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "actpress/byte_io.hpp"

namespace actpress {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'A', 'C', 'T', 'C'};
constexpr std::uint8_t kVersion = 1;

std::uint16_t extent(std::uint32_t v) {
  if (v == 0 || v > kContainerMaxExtent) {
    throw Error(ErrorKind::kUnsupported,
                "container extents must be in [1, 65535], got " + std::to_string(v));
  }
  return static_cast<std::uint16_t>(v);
}

}  // namespace

const char* to_string(CoderId id) {
  switch (id) {
    case CoderId::kSymeg: return "symeg";
    case CoderId::kEg: return "eg";
    case CoderId::kRans: return "rans";
  }
  return "?";
}

std::size_t CompressedActivation::overhead_bytes() const {
  switch (coder) {
    case CoderId::kSymeg: return 4 * references.size();
    case CoderId::kEg: return 0;
    case CoderId::kRans: return 8 * gaussian.channels();
  }
  return 0;
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
    crc = ::crc32(crc, bytes.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> serialize(const CompressedActivation& c) {
  const std::size_t channels = c.shape.c;
  if (c.coder == CoderId::kSymeg && c.references.size() != channels) {
    throw Error(ErrorKind::kShape, "symeg container needs one reference per channel");
  }
  if (c.coder == CoderId::kRans &&
      (c.gaussian.mu.size() != channels || c.gaussian.sigma.size() != channels)) {
    throw Error(ErrorKind::kShape, "rans container needs (mu, sigma) per channel");
  }
  ByteWriter out;
  out.buffer().reserve(c.total_bytes());
  out.bytes(kMagic);
  out.u8(kVersion);
  out.u8(static_cast<std::uint8_t>(c.coder));
  out.u8(static_cast<std::uint8_t>(c.quant.q));
  out.u8(c.param);
  out.u16(extent(c.shape.c));
  out.u16(extent(c.shape.h));
  out.u16(extent(c.shape.w));
  out.f32(c.quant.y_min);
  out.f32(c.quant.y_max);
  if (c.coder == CoderId::kSymeg) {
    for (auto r : c.references) out.u32(r);
  } else if (c.coder == CoderId::kRans) {
    for (std::size_t i = 0; i < channels; ++i) {
      out.f32(c.gaussian.mu[i]);
      out.f32(c.gaussian.sigma[i]);
    }
  }
  out.u64(c.payload.size());
  out.bytes(c.payload);
  out.u32(crc32(c.payload));
  return out.take();
}

CompressedActivation parse_container(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  if (bytes.size() < kMagic.size() ||
      !std::equal(kMagic.begin(), kMagic.end(), in.bytes(kMagic.size()).begin())) {
    throw Error(ErrorKind::kFormat, "missing ACTC magic");
  }
  const std::uint8_t version = in.u8();
  if (version != kVersion) {
    throw Error(ErrorKind::kUnsupported, "container version " + std::to_string(version));
  }
  CompressedActivation c;
  const std::uint8_t coder = in.u8();
  if (coder > static_cast<std::uint8_t>(CoderId::kRans)) {
    throw Error(ErrorKind::kUnsupported, "coder id " + std::to_string(coder));
  }
  c.coder = static_cast<CoderId>(coder);
  c.quant.q = in.u8();
  if (c.quant.q < kMinBitDepth || c.quant.q > kMaxBitDepth) {
    throw Error(ErrorKind::kFormat, "bit depth " + std::to_string(c.quant.q) + " in header");
  }
  c.param = in.u8();
  c.shape.c = in.u16();
  c.shape.h = in.u16();
  c.shape.w = in.u16();
  if (c.shape.size() == 0) throw Error(ErrorKind::kFormat, "zero extent in container header");
  c.quant.y_min = in.f32();
  c.quant.y_max = in.f32();
  if (!(c.quant.y_min <= c.quant.y_max)) {
    throw Error(ErrorKind::kFormat, "quantization range is inverted or not finite");
  }
  if (c.coder == CoderId::kSymeg) {
    c.references.resize(c.shape.c);
    for (auto& r : c.references) r = in.u32();
  } else if (c.coder == CoderId::kRans) {
    c.gaussian.mu.resize(c.shape.c);
    c.gaussian.sigma.resize(c.shape.c);
    for (std::size_t i = 0; i < c.shape.c; ++i) {
      c.gaussian.mu[i] = in.f32();
      c.gaussian.sigma[i] = in.f32();
    }
  }
  const std::uint64_t length = in.u64();
  if (length > in.remaining()) {
    throw Error(ErrorKind::kCorruption, "payload length exceeds container size");
  }
  const auto payload = in.bytes(static_cast<std::size_t>(length));
  const std::uint32_t stored = in.u32();
  if (in.remaining() != 0) {
    throw Error(ErrorKind::kCorruption, "trailing bytes after container checksum");
  }
  if (crc32(payload) != stored) throw Error(ErrorKind::kCorruption, "payload checksum mismatch");
  c.payload.assign(payload.begin(), payload.end());
  c.payload_bits = 8 * std::uint64_t{length};
  return c;
}

}  // namespace actpress
