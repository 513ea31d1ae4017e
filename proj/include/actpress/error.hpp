// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace actpress {

enum class ErrorKind {
  kFormat,       // bad magic / malformed header
  kCorruption,   // truncated data, checksum mismatch, coder desync
  kUnsupported,  // unknown dtype, coder id, version
  kIo,
  kDomain,       // value outside the operation's domain
  kShape,
  kParameter,
  kConfig,
  kDegenerateScale,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kCorruption: return "corruption";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kDegenerateScale: return "degenerate-scale";
  }
  return "unknown";
}

}  // namespace actpress
