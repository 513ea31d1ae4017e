// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: compress, decompress, estimate, fit-transform,
// quantize-weights, stats.
// Exit codes: 0 ok, 1 usage/config, 2 I/O, 3 format or corruption.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "actpress/actpress.hpp"

namespace fs = std::filesystem;
using namespace actpress;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFormat = 3;

struct CodecFlags {
  std::string coder = "symeg";
  unsigned q = 8;
  unsigned k = 4;
  std::string ref = "median";
  std::string transform;
  double gamma = 0.0;
};

void add_codec_flags(CLI::App* cmd, CodecFlags& f, bool with_gamma) {
  cmd->add_option("--coder", f.coder, "Entropy coder: symeg, eg or rans")
      ->check(CLI::IsMember({"symeg", "eg", "rans"}));
  cmd->add_option("--q", f.q, "Quantization bit depth (2..16)");
  cmd->add_option("--k", f.k, "Exp-Golomb order for --coder eg");
  cmd->add_option("--ref", f.ref, "SymEG reference: mean, mode or median")
      ->check(CLI::IsMember({"mean", "mode", "median"}));
  cmd->add_option("--transform", f.transform, "Directory with 1x1 transform parameters");
  if (with_gamma) cmd->add_option("--gamma", f.gamma, "Penalty weight");
}

ChannelTransform load_transform_flag(const std::string& dir) {
  return dir.empty() ? ChannelTransform::identity() : load_transform(dir);
}

PipelineConfig to_config(const CodecFlags& f) {
  PipelineConfig cfg;
  cfg.q = f.q;
  cfg.gamma = f.gamma;
  if (f.coder == "symeg") cfg.coder = SymegCoder{parse_selector(f.ref)};
  else if (f.coder == "eg") cfg.coder = EgCoder{f.k};
  else cfg.coder = RansGaussianCoder{};
  cfg.validate();
  cfg.transform = load_transform_flag(f.transform);
  return cfg;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kFormat:
    case ErrorKind::kCorruption:
    case ErrorKind::kUnsupported: return kExitFormat;
    default: return kExitUsage;
  }
}

int cmd_compress(const std::string& in, const std::string& out, const CodecFlags& flags) {
  const PipelineConfig cfg = to_config(flags);
  const Tensor x = read_tensor(in);
  const CompressedActivation c = compress(x, cfg);
  const auto bytes = serialize(c);
  write_file(out, bytes);
  std::cout << format_compress_stats(uncompressed_bytes(x.shape()), bytes.size(), x.size(),
                                     c.payload_bits)
            << "\n";
  return kExitOk;
}

int cmd_decompress(const std::string& in, const std::string& out, const std::string& transform) {
  PipelineConfig cfg;
  cfg.transform = load_transform_flag(transform);
  const CompressedActivation c = parse_container(read_file(in));
  write_tensor(decompress(c, cfg), out);
  return kExitOk;
}

int cmd_estimate(const std::string& in, const CodecFlags& flags) {
  const PipelineConfig cfg = to_config(flags);
  const Tensor x = read_tensor(in);
  const PenaltyEstimate e = estimate_penalty(x, cfg);
  std::cout << fmt::format("coder={} bits={} bits_per_element={} normalized={} gamma={} penalty={}",
                           flags.coder, e.bits, e.bits_per_element, e.normalized, cfg.gamma,
                           e.penalty)
            << "\n";
  return kExitOk;
}

int cmd_fit_transform(const std::string& sample_dir, const std::string& out_dir) {
  if (!fs::is_directory(sample_dir)) {
    throw Error(ErrorKind::kIo, "sample directory not found: " + sample_dir);
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(sample_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".atns") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Tensor> samples;
  for (const auto& p : files) samples.push_back(read_tensor(p));
  const ChannelTransform t = fit_pca_transform(samples);
  save_transform(t, out_dir);
  std::cout << fmt::format("samples={} channels={} out={}", samples.size(), t.channels(), out_dir)
            << "\n";
  return kExitOk;
}

std::pair<unsigned, unsigned> parse_nm(const std::string& s) {
  unsigned n = 0, m = 0;
  char colon = 0;
  std::istringstream is(s);
  if (!(is >> n >> colon >> m) || colon != ':' || !is.eof()) {
    throw Error(ErrorKind::kConfig, "--nm expects N:M, got '" + s + "'");
  }
  return {n, m};
}

int cmd_quantize_weights(const std::string& in, const std::string& out, const std::string& nm,
                         bool int8) {
  Filter w = read_filter(in);
  std::size_t kept = w.values.size();
  if (!nm.empty()) {
    const auto [n, m] = parse_nm(nm);
    SparseWeights s = apply_nm_sparsity(w, n, m);
    kept = static_cast<std::size_t>(std::count(s.mask.keep.begin(), s.mask.keep.end(), 1));
    w = std::move(s.weights);
  }
  std::cout << fmt::format("weights={} kept={} density={}", w.values.size(), kept,
                           static_cast<double>(kept) / static_cast<double>(w.values.size()))
            << "\n";
  if (int8) {
    const auto scales = int8_weight_scales(w);
    write_filter(quantize_int8(w, scales), out);
    for (std::size_t o = 0; o < scales.size(); ++o) {
      std::cout << fmt::format("output_channel={} weight_scale={}", o, scales[o]) << "\n";
    }
  } else {
    write_filter(w, out);
  }
  return kExitOk;
}

struct LayerEntry {
  std::string name;
  fs::path activation;
  fs::path container;
  std::uint64_t macs = 0;
};

std::vector<LayerEntry> read_layer_list(const fs::path& list) {
  const auto bytes = read_file(list);
  std::istringstream is(std::string(bytes.begin(), bytes.end()));
  std::vector<LayerEntry> layers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    LayerEntry e;
    std::string act, cont;
    if (!(ls >> e.name)) continue;
    if (!(ls >> act >> cont)) {
      throw Error(ErrorKind::kConfig, fmt::format("layer list line {}: expected "
                                                  "'name activation.atns container.actc [macs]'",
                                                  line_no));
    }
    if (!(ls >> e.macs)) e.macs = 0;
    e.activation = fs::path(act).is_absolute() ? fs::path(act) : list.parent_path() / act;
    e.container = fs::path(cont).is_absolute() ? fs::path(cont) : list.parent_path() / cont;
    layers.push_back(std::move(e));
  }
  return layers;
}

int cmd_stats(const std::string& list, const std::string& energy_config, bool int8) {
  const EnergyModel model = energy_config.empty() ? EnergyModel{} : EnergyModel::load(energy_config);
  const auto entries = read_layer_list(list);
  std::vector<Tensor> activations;
  std::vector<CompressedActivation> containers;
  std::vector<LayerCost> baseline, pipeline;
  for (const auto& e : entries) {
    activations.push_back(read_tensor(e.activation));
    containers.push_back(parse_container(read_file(e.container)));
  }
  const BandwidthReport bw = bandwidth_report(activations, containers);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    baseline.push_back({bw.layers[i].uncompressed_bytes, entries[i].macs, 0});
    pipeline.push_back({bw.layers[i].compressed_bytes, int8 ? 0 : entries[i].macs,
                        int8 ? entries[i].macs : 0});
  }
  const EnergyReport energy = energy_report(baseline, pipeline, model);

  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::cout << format_layer_line(entries[i].name, bw.layers[i]) << "\n";
  }
  std::cout << format_aggregate_line(bw) << "\n";
  std::cout << format_energy_line(energy) << "\n";
  std::cout << fmt::format("energy_config dram_pj_per_byte={} mac_pj_fp32={} mac_pj_int8={}",
                           model.dram_pj_per_byte, model.mac_pj_fp32, model.mac_pj_int8)
            << "\n\n";
  std::cout << fmt::format("{:<16} {:>16} {:>16} {:>10}\n", "layer", "uncompressed", "compressed",
                           "ratio");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::cout << fmt::format("{:<16} {:>16} {:>16} {:>10.3f}\n", entries[i].name,
                             bw.layers[i].uncompressed_bytes, bw.layers[i].compressed_bytes,
                             bw.layers[i].ratio);
  }
  std::cout << fmt::format("{:<16} {:>16} {:>16} {:>10.3f}\n", "total", bw.total_uncompressed,
                           bw.total_compressed, bw.aggregate_ratio);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Activation compression codec"};
  app.require_subcommand(1, 1);

  std::string in, out, transform, nm, energy_config, list;
  bool int8 = false;
  CodecFlags codec;

  auto* compress_cmd = app.add_subcommand("compress", "Compress an .atns activation");
  compress_cmd->add_option("input", in, "Input tensor (.atns)")->required();
  compress_cmd->add_option("output", out, "Output container (.actc)")->required();
  add_codec_flags(compress_cmd, codec, false);

  auto* decompress_cmd = app.add_subcommand("decompress", "Reconstruct an activation");
  decompress_cmd->add_option("input", in, "Input container (.actc)")->required();
  decompress_cmd->add_option("output", out, "Output tensor (.atns)")->required();
  decompress_cmd->add_option("--transform", transform, "Directory with 1x1 transform parameters");

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate coded bits and penalty");
  estimate_cmd->add_option("input", in, "Input tensor (.atns)")->required();
  add_codec_flags(estimate_cmd, codec, true);

  auto* fit_cmd = app.add_subcommand("fit-transform", "Fit a decorrelating 1x1 transform");
  fit_cmd->add_option("samples", in, "Directory of calibration .atns tensors")->required();
  fit_cmd->add_option("output", out, "Output parameter directory")->required();

  auto* qw_cmd = app.add_subcommand("quantize-weights", "Sparsify and/or int8-quantize weights");
  qw_cmd->add_option("input", in, "Input filter (.atns version 2)")->required();
  qw_cmd->add_option("output", out, "Output filter")->required();
  qw_cmd->add_option("--nm", nm, "n:m sparsity pattern, e.g. 2:4");
  qw_cmd->add_flag("--int8", int8, "Write per-output-channel int8 weights");

  auto* stats_cmd = app.add_subcommand("stats", "Bandwidth and energy report over layers");
  stats_cmd->add_option("layers", list, "Layer list: name activation container [macs]")
      ->required();
  stats_cmd->add_option("--energy-config", energy_config, "key=value energy cost file");
  stats_cmd->add_flag("--int8", int8, "Pipeline MACs run in int8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == compress_cmd) return cmd_compress(in, out, codec);
    if (active == decompress_cmd) return cmd_decompress(in, out, transform);
    if (active == estimate_cmd) return cmd_estimate(in, codec);
    if (active == fit_cmd) return cmd_fit_transform(in, out);
    if (active == qw_cmd) return cmd_quantize_weights(in, out, nm, int8);
    return cmd_stats(list, energy_config, int8);
  } catch (const Error& e) {
    std::cerr << "actpress " << active->get_name() << ": " << e.what() << "\n";
    const int rc = exit_code_for(e.kind());
    if (rc == kExitUsage) std::cerr << active->help();
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "actpress " << active->get_name() << ": " << e.what() << "\n";
    return kExitIo;
  }
}
