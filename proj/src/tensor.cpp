// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/tensor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "actpress/byte_io.hpp"

namespace actpress {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'A', 'T', 'N', 'S'};
constexpr std::uint8_t kVersionTensor = 1;
constexpr std::uint8_t kVersionFilter = 2;

template <class T>
void append_elements(ByteWriter& out, std::span<const T> values) {
  for (T v : values) {
    if constexpr (std::is_same_v<T, float>) {
      out.f32(v);
    } else if constexpr (sizeof(T) == 1) {
      out.u8(static_cast<std::uint8_t>(v));
    } else if constexpr (sizeof(T) == 2) {
      out.u16(static_cast<std::uint16_t>(v));
    } else {
      out.u32(static_cast<std::uint32_t>(v));
    }
  }
}

template <class T>
std::vector<T> parse_elements(ByteReader& in, std::size_t count) {
  // Check the payload length up front so a huge bogus header cannot allocate.
  auto raw = in.bytes(count * sizeof(T));
  std::vector<T> values(count);
  ByteReader r(raw);
  for (auto& v : values) {
    if constexpr (std::is_same_v<T, float>) {
      v = r.f32();
    } else if constexpr (sizeof(T) == 1) {
      v = static_cast<T>(r.u8());
    } else if constexpr (sizeof(T) == 2) {
      v = static_cast<T>(r.u16());
    } else {
      v = static_cast<T>(r.u32());
    }
  }
  return values;
}

struct Header {
  std::uint8_t version;
  DType dtype;
  std::vector<std::uint32_t> dims;
};

void write_header(ByteWriter& out, std::uint8_t version, DType dtype,
                  std::span<const std::uint32_t> dims) {
  out.bytes(kMagic);
  out.u8(version);
  out.u8(static_cast<std::uint8_t>(dtype));
  out.u8(static_cast<std::uint8_t>(dims.size()));
  for (auto d : dims) out.u32(d);
}

Header read_header(ByteReader& in) {
  if (in.remaining() < kMagic.size() ||
      !std::equal(kMagic.begin(), kMagic.end(), in.bytes(kMagic.size()).begin())) {
    throw Error(ErrorKind::kFormat, "missing ATNS magic");
  }
  Header h{};
  h.version = in.u8();
  if (h.version != kVersionTensor && h.version != kVersionFilter) {
    throw Error(ErrorKind::kUnsupported, "tensor file version " + std::to_string(h.version));
  }
  const std::uint8_t code = in.u8();
  if (code > static_cast<std::uint8_t>(DType::kI32)) {
    throw Error(ErrorKind::kUnsupported, "dtype code " + std::to_string(code));
  }
  h.dtype = static_cast<DType>(code);
  const std::uint8_t ndim = in.u8();
  const std::uint8_t expected = h.version == kVersionTensor ? 3 : 4;
  if (ndim != expected) {
    throw Error(ErrorKind::kFormat, "version " + std::to_string(h.version) + " requires ndim " +
                                        std::to_string(expected) + ", got " +
                                        std::to_string(ndim));
  }
  for (int i = 0; i < ndim; ++i) {
    const auto d = in.u32();
    if (d == 0) throw Error(ErrorKind::kFormat, "zero extent in tensor header");
    h.dims.push_back(d);
  }
  return h;
}

void expect_consumed(const ByteReader& in) {
  if (in.remaining() != 0) {
    throw Error(ErrorKind::kFormat,
                std::to_string(in.remaining()) + " trailing bytes after tensor payload");
  }
}

}  // namespace

std::size_t element_size(DType dtype) {
  switch (dtype) {
    case DType::kF32: return 4;
    case DType::kU8: return 1;
    case DType::kU16: return 2;
    case DType::kI8: return 1;
    case DType::kI32: return 4;
  }
  throw Error(ErrorKind::kUnsupported, "dtype");
}

const char* to_string(DType dtype) {
  switch (dtype) {
    case DType::kF32: return "f32";
    case DType::kU8: return "u8";
    case DType::kU16: return "u16";
    case DType::kI8: return "i8";
    case DType::kI32: return "i32";
  }
  return "?";
}

Tensor Tensor::from_symbols(Shape shape, std::span<const std::uint32_t> symbols,
                            unsigned bit_depth) {
  if (bit_depth > 16) throw Error(ErrorKind::kParameter, "symbol bit depth above 16");
  const std::uint32_t limit = (1u << bit_depth) - 1;
  for (auto s : symbols) {
    if (s > limit) throw Error(ErrorKind::kDomain, "symbol exceeds bit depth");
  }
  if (bit_depth <= 8) {
    return Tensor(shape, std::vector<std::uint8_t>(symbols.begin(), symbols.end()));
  }
  return Tensor(shape, std::vector<std::uint16_t>(symbols.begin(), symbols.end()));
}

void Tensor::validate() const {
  if (shape_.c == 0 || shape_.h == 0 || shape_.w == 0) {
    throw Error(ErrorKind::kShape, "tensor extents must be positive");
  }
  const std::size_t n = std::visit([](const auto& v) { return v.size(); }, storage_);
  if (n != shape_.size()) {
    throw Error(ErrorKind::kShape, "element count " + std::to_string(n) + " != C*H*W " +
                                       std::to_string(shape_.size()));
  }
}

std::vector<std::uint32_t> Tensor::symbols() const {
  switch (dtype()) {
    case DType::kU8: {
      auto d = data<std::uint8_t>();
      return {d.begin(), d.end()};
    }
    case DType::kU16: {
      auto d = data<std::uint16_t>();
      return {d.begin(), d.end()};
    }
    default:
      throw Error(ErrorKind::kParameter,
                  std::string("symbol tensor must be u8 or u16, got ") + to_string(dtype()));
  }
}

std::vector<std::uint8_t> Tensor::bytes() const {
  ByteWriter out;
  std::visit([&](const auto& v) { append_elements(out, std::span(v)); }, storage_);
  return out.take();
}

bool Tensor::operator==(const Tensor& other) const {
  if (shape_ != other.shape_ || dtype() != other.dtype()) return false;
  return bytes() == other.bytes();
}

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  ByteWriter out;
  const std::array<std::uint32_t, 3> dims = {t.shape().c, t.shape().h, t.shape().w};
  write_header(out, kVersionTensor, t.dtype(), dims);
  auto payload = t.bytes();
  out.bytes(payload);
  return out.take();
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const Header h = read_header(in);
  if (h.version != kVersionTensor) {
    throw Error(ErrorKind::kUnsupported, "expected a 3-d tensor, file holds a 4-d filter");
  }
  const Shape shape{h.dims[0], h.dims[1], h.dims[2]};
  const std::size_t n = shape.size();
  Tensor t = [&]() -> Tensor {
    switch (h.dtype) {
      case DType::kF32: return Tensor(shape, parse_elements<float>(in, n));
      case DType::kU8: return Tensor(shape, parse_elements<std::uint8_t>(in, n));
      case DType::kU16: return Tensor(shape, parse_elements<std::uint16_t>(in, n));
      case DType::kI8: return Tensor(shape, parse_elements<std::int8_t>(in, n));
      case DType::kI32: return Tensor(shape, parse_elements<std::int32_t>(in, n));
    }
    throw Error(ErrorKind::kUnsupported, "dtype");
  }();
  expect_consumed(in);
  return t;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  if (f.bad()) throw Error(ErrorKind::kIo, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIo, "cannot open for writing " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  f.flush();
  if (!f) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }

std::size_t write_tensor(const Tensor& t, const std::filesystem::path& path) {
  const auto bytes = encode_tensor(t);
  write_file(path, bytes);
  return bytes.size();
}

Filter read_filter(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  ByteReader in(bytes);
  const Header h = read_header(in);
  if (h.version != kVersionFilter) {
    throw Error(ErrorKind::kUnsupported, "expected a 4-d filter file (version 2)");
  }
  if (h.dtype != DType::kF32) {
    throw Error(ErrorKind::kUnsupported, "filters are read as f32 only");
  }
  Filter f;
  f.shape = {h.dims[0], h.dims[1], h.dims[2], h.dims[3]};
  f.values = parse_elements<float>(in, f.shape.size());
  expect_consumed(in);
  return f;
}

namespace {

template <class T>
std::size_t write_filter_impl(const FilterBank<T>& f, const std::filesystem::path& path) {
  if (f.values.size() != f.shape.size() || f.shape.size() == 0) {
    throw Error(ErrorKind::kShape, "filter element count does not match O*I*kh*kw");
  }
  ByteWriter out;
  const std::array<std::uint32_t, 4> dims = {f.shape.out, f.shape.in, f.shape.kh, f.shape.kw};
  write_header(out, kVersionFilter, dtype_of<T>(), dims);
  append_elements(out, std::span<const T>(f.values));
  write_file(path, out.buffer());
  return out.size();
}

}  // namespace

std::size_t write_filter(const Filter& f, const std::filesystem::path& path) {
  return write_filter_impl(f, path);
}

std::size_t write_filter(const Int8Filter& f, const std::filesystem::path& path) {
  return write_filter_impl(f, path);
}

}  // namespace actpress
