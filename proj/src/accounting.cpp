// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/accounting.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

namespace actpress {
namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::uint64_t uncompressed_bytes(Shape shape) { return 4 * std::uint64_t{shape.size()}; }

BandwidthReport bandwidth_report(std::span<const Tensor> activations,
                                 std::span<const CompressedActivation> containers) {
  if (activations.size() != containers.size()) {
    throw Error(ErrorKind::kParameter, "activation and container lists differ in length");
  }
  std::vector<LayerBandwidth> layers;
  for (std::size_t i = 0; i < activations.size(); ++i) {
    if (activations[i].shape() != containers[i].shape) {
      throw Error(ErrorKind::kParameter, "layer " + std::to_string(i) +
                                             ": container extents differ from the activation");
    }
    layers.push_back({uncompressed_bytes(activations[i].shape()), containers[i].total_bytes(), 0.0});
  }
  return bandwidth_report(layers);
}

BandwidthReport bandwidth_report(std::span<const LayerBandwidth> layers) {
  BandwidthReport r;
  for (LayerBandwidth l : layers) {
    l.ratio = safe_ratio(static_cast<double>(l.uncompressed_bytes),
                         static_cast<double>(l.compressed_bytes));
    r.total_uncompressed += l.uncompressed_bytes;
    r.total_compressed += l.compressed_bytes;
    r.layers.push_back(l);
  }
  r.aggregate_ratio = safe_ratio(static_cast<double>(r.total_uncompressed),
                                 static_cast<double>(r.total_compressed));
  return r;
}

void EnergyModel::validate() const {
  for (double v : {dram_pj_per_byte, mac_pj_fp32, mac_pj_int8}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::kConfig, "energy costs must be finite and non-negative");
    }
  }
}

EnergyModel EnergyModel::parse(std::string_view text) {
  EnergyModel m;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kConfig, "energy config line " + std::to_string(line_no) +
                                          ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    double v = 0.0;
    std::istringstream is(value);
    is >> v;
    if (!is || !is.eof()) {
      throw Error(ErrorKind::kConfig, "energy config line " + std::to_string(line_no) +
                                          ": bad number '" + value + "'");
    }
    if (key == "dram_pj_per_byte") m.dram_pj_per_byte = v;
    else if (key == "mac_pj_fp32") m.mac_pj_fp32 = v;
    else if (key == "mac_pj_int8") m.mac_pj_int8 = v;
    else throw Error(ErrorKind::kConfig, "unknown energy config key '" + key + "'");
  }
  m.validate();
  return m;
}

EnergyModel EnergyModel::load(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string EnergyModel::to_config() const {
  return fmt::format("dram_pj_per_byte={}\nmac_pj_fp32={}\nmac_pj_int8={}\n", dram_pj_per_byte,
                     mac_pj_fp32, mac_pj_int8);
}

double energy_pj(std::span<const LayerCost> layers, const EnergyModel& model) {
  double e = 0.0;
  for (const auto& l : layers) {
    e += static_cast<double>(l.dram_bytes) * model.dram_pj_per_byte +
         static_cast<double>(l.macs_fp32) * model.mac_pj_fp32 +
         static_cast<double>(l.macs_int8) * model.mac_pj_int8;
  }
  return e;
}

EnergyReport energy_report(std::span<const LayerCost> baseline,
                           std::span<const LayerCost> pipeline, const EnergyModel& model) {
  model.validate();
  EnergyReport r;
  r.baseline_pj = energy_pj(baseline, model);
  r.pipeline_pj = energy_pj(pipeline, model);
  r.ratio = safe_ratio(r.baseline_pj, r.pipeline_pj);
  return r;
}

std::string format_compress_stats(std::uint64_t in_bytes, std::uint64_t out_bytes,
                                  std::uint64_t elements, std::uint64_t payload_bits) {
  return fmt::format("in_bytes={} out_bytes={} ratio={} bits_per_element={} payload_bits={}",
                     in_bytes, out_bytes,
                     safe_ratio(static_cast<double>(in_bytes), static_cast<double>(out_bytes)),
                     safe_ratio(8.0 * static_cast<double>(out_bytes),
                                static_cast<double>(elements)),
                     payload_bits);
}

std::string format_layer_line(std::string_view name, const LayerBandwidth& layer) {
  return fmt::format("layer={} uncompressed_bytes={} compressed_bytes={} ratio={}", name,
                     layer.uncompressed_bytes, layer.compressed_bytes, layer.ratio);
}

std::string format_aggregate_line(const BandwidthReport& report) {
  return fmt::format("aggregate uncompressed_bytes={} compressed_bytes={} ratio={}",
                     report.total_uncompressed, report.total_compressed, report.aggregate_ratio);
}

std::string format_energy_line(const EnergyReport& report) {
  return fmt::format("energy baseline_pj={} pipeline_pj={} ratio={}", report.baseline_pj,
                     report.pipeline_pj, report.ratio);
}

}  // namespace actpress
