// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "actpress/error.hpp"

namespace actpress {

// Codes are part of the on-disk format.
enum class DType : std::uint8_t { kF32 = 0, kU8 = 1, kU16 = 2, kI8 = 3, kI32 = 4 };

std::size_t element_size(DType dtype);
const char* to_string(DType dtype);

template <class T>
constexpr DType dtype_of() {
  if constexpr (std::is_same_v<T, float>) return DType::kF32;
  else if constexpr (std::is_same_v<T, std::uint8_t>) return DType::kU8;
  else if constexpr (std::is_same_v<T, std::uint16_t>) return DType::kU16;
  else if constexpr (std::is_same_v<T, std::int8_t>) return DType::kI8;
  else if constexpr (std::is_same_v<T, std::int32_t>) return DType::kI32;
  else static_assert(sizeof(T) == 0, "unsupported element type");
}

/// C x H x W extents, row-major with C outermost.
struct Shape {
  std::uint32_t c = 0;
  std::uint32_t h = 0;
  std::uint32_t w = 0;

  std::size_t size() const { return std::size_t{c} * h * w; }
  std::size_t plane() const { return std::size_t{h} * w; }
  bool operator==(const Shape&) const = default;
};

/// Immutable feature map. Holds one of the supported element types; typed
/// access through data<T>() checks the dtype.
class Tensor {
 public:
  using Storage = std::variant<std::vector<float>, std::vector<std::uint8_t>,
                               std::vector<std::uint16_t>, std::vector<std::int8_t>,
                               std::vector<std::int32_t>>;

  Tensor() = default;

  template <class T>
  Tensor(Shape shape, std::vector<T> values) : shape_(shape), storage_(std::move(values)) {
    validate();
  }

  /// Unsigned symbol tensor; u8 when every symbol fits, else u16.
  static Tensor from_symbols(Shape shape, std::span<const std::uint32_t> symbols,
                             unsigned bit_depth);

  const Shape& shape() const { return shape_; }
  DType dtype() const { return static_cast<DType>(storage_.index()); }
  std::size_t size() const { return shape_.size(); }

  template <class T>
  std::span<const T> data() const {
    if (dtype() != dtype_of<T>()) {
      throw Error(ErrorKind::kParameter, std::string("tensor holds ") + to_string(dtype()) +
                                             ", requested " + to_string(dtype_of<T>()));
    }
    return std::get<std::vector<T>>(storage_);
  }

  template <class T>
  std::span<const T> channel(std::uint32_t c) const {
    return data<T>().subspan(std::size_t{c} * shape_.plane(), shape_.plane());
  }

  /// Elements of an unsigned tensor (u8/u16) widened to 32 bits.
  std::vector<std::uint32_t> symbols() const;

  /// Raw little-endian element bytes.
  std::vector<std::uint8_t> bytes() const;

  /// Bit-exact equality (floats compared by representation).
  bool operator==(const Tensor& other) const;

 private:
  void validate() const;

  Shape shape_;
  Storage storage_;
};

/// O x I x kh x kw convolution weights.
struct FilterShape {
  std::uint32_t out = 0;
  std::uint32_t in = 0;
  std::uint32_t kh = 0;
  std::uint32_t kw = 0;

  std::size_t size() const { return std::size_t{out} * in * kh * kw; }
  std::size_t per_output() const { return std::size_t{in} * kh * kw; }
  bool operator==(const FilterShape&) const = default;
};

template <class T>
struct FilterBank {
  FilterShape shape;
  std::vector<T> values;

  std::span<const T> output(std::uint32_t o) const {
    return std::span<const T>(values).subspan(std::size_t{o} * shape.per_output(),
                                              shape.per_output());
  }
  bool operator==(const FilterBank&) const = default;
};

using Filter = FilterBank<float>;
using Int8Filter = FilterBank<std::int8_t>;

// TensorFile: "ATNS" | version u8 | dtype u8 | ndim u8 | dims u32 LE x ndim | payload.
// Version 1 carries ndim = 3 tensors, version 2 adds ndim = 4 filters.
inline constexpr std::size_t kTensorHeaderBytes = 19;
inline constexpr std::size_t kFilterHeaderBytes = 23;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

Tensor read_tensor(const std::filesystem::path& path);
std::size_t write_tensor(const Tensor& t, const std::filesystem::path& path);

Filter read_filter(const std::filesystem::path& path);
std::size_t write_filter(const Filter& f, const std::filesystem::path& path);
std::size_t write_filter(const Int8Filter& f, const std::filesystem::path& path);

// Whole-file helpers shared with the container code.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace actpress
