// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "actpress/container.hpp"
#include "actpress/tensor.hpp"

namespace actpress {

/// Bytes of the uncompressed f32 activation: 4 * C * H * W.
std::uint64_t uncompressed_bytes(Shape shape);

struct LayerBandwidth {
  std::uint64_t uncompressed_bytes = 0;
  std::uint64_t compressed_bytes = 0;
  double ratio = 0.0;
};

struct BandwidthReport {
  std::vector<LayerBandwidth> layers;
  std::uint64_t total_uncompressed = 0;
  std::uint64_t total_compressed = 0;
  /// Sum of uncompressed over sum of compressed, not a mean of ratios.
  double aggregate_ratio = 0.0;
};

BandwidthReport bandwidth_report(std::span<const Tensor> activations,
                                 std::span<const CompressedActivation> containers);
BandwidthReport bandwidth_report(std::span<const LayerBandwidth> layers);

/// Energy per DRAM byte and per MAC, in picojoules.
struct EnergyModel {
  double dram_pj_per_byte = 160.0;
  double mac_pj_fp32 = 4.6;
  double mac_pj_int8 = 0.23;

  void validate() const;
  /// key=value lines; '#' starts a comment. Unknown keys are config errors.
  static EnergyModel parse(std::string_view text);
  static EnergyModel load(const std::filesystem::path& path);
  std::string to_config() const;
};

struct LayerCost {
  std::uint64_t dram_bytes = 0;
  std::uint64_t macs_fp32 = 0;
  std::uint64_t macs_int8 = 0;
};

double energy_pj(std::span<const LayerCost> layers, const EnergyModel& model);

struct EnergyReport {
  double baseline_pj = 0.0;
  double pipeline_pj = 0.0;
  double ratio = 0.0;  // baseline / pipeline
};

EnergyReport energy_report(std::span<const LayerCost> baseline,
                           std::span<const LayerCost> pipeline, const EnergyModel& model);

// Machine-readable report lines. Doubles print in shortest round-trip form so
// a parsed value equals the library value exactly.
std::string format_compress_stats(std::uint64_t in_bytes, std::uint64_t out_bytes,
                                  std::uint64_t elements, std::uint64_t payload_bits);
std::string format_layer_line(std::string_view name, const LayerBandwidth& layer);
std::string format_aggregate_line(const BandwidthReport& report);
std::string format_energy_line(const EnergyReport& report);

}  // namespace actpress
