// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion with its wall time.
// A criterion over its time budget fails. Exit status 1 if any fails.

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "actpress/actpress.hpp"
#include "cli_fixtures.hpp"

namespace fs = std::filesystem;
using namespace actpress;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

unsigned floor_log2(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)) - 1; }

// Closed-form SymEG length with x == ref taking the first branch.
unsigned symeg_length_oracle(std::uint32_t x, std::uint32_t ref) {
  if (x >= ref) return 2 * floor_log2(2ull * (x - ref) + 1) + 1;
  return 2 * floor_log2(2ull * (ref - x) + 2) + 1;
}

unsigned eg_length_oracle(std::uint32_t x, unsigned k) {
  return 2 * floor_log2(std::uint64_t{x} + (1ull << k)) - k + 1;
}

Outcome symeg_exhaustive() {
  constexpr std::uint32_t kN = 1u << 12;
  std::uint64_t pairs = 0;
  for (std::uint32_t ref = 0; ref < kN; ++ref) {
    BitWriter w;
    std::vector<unsigned> lengths(kN);
    for (std::uint32_t x = 0; x < kN; ++x) {
      const std::size_t before = w.length();
      symeg_encode(w, x, ref);
      lengths[x] = static_cast<unsigned>(w.length() - before);
      if (lengths[x] != symeg_length_oracle(x, ref) || symeg_length(x, ref) != lengths[x]) {
        return {false, fmt::format("length mismatch at x={} ref={}: coded {} closed form {}", x,
                                   ref, lengths[x], symeg_length_oracle(x, ref))};
      }
    }
    const BitString bits = std::move(w).finish();
    BitReader r(bits.bytes, bits.length);
    for (std::uint32_t x = 0; x < kN; ++x) {
      const std::size_t before = r.position();
      const std::uint32_t y = symeg_decode(r, ref);
      if (y != x || r.position() - before != lengths[x]) {
        return {false, fmt::format("decode mismatch at x={} ref={} got {}", x, ref, y)};
      }
      ++pairs;
    }
  }
  return {true, fmt::format("{} pairs round-trip, lengths equal the closed form", pairs)};
}

Outcome eg_exhaustive() {
  constexpr std::uint32_t kN = 1u << 16;
  for (unsigned k : {0u, 4u, 8u}) {
    BitWriter w;
    for (std::uint32_t x = 0; x < kN; ++x) {
      const std::size_t before = w.length();
      eg_encode(w, x, k);
      if (w.length() - before != eg_length_oracle(x, k)) {
        return {false, fmt::format("k={} x={}: length {} expected {}", k, x, w.length() - before,
                                   eg_length_oracle(x, k))};
      }
    }
    const BitString bits = std::move(w).finish();
    BitReader r(bits.bytes, bits.length);
    for (std::uint32_t x = 0; x < kN; ++x) {
      const std::uint32_t y = eg_decode(r, k);
      if (y != x) return {false, fmt::format("k={} x={} decoded as {}", k, x, y)};
    }
    if (r.remaining() != 0) return {false, fmt::format("k={}: {} bits left", k, r.remaining())};
  }
  return {true, "3 x 65536 symbols round-trip with standard lengths"};
}

CdfTable random_table(std::mt19937_64& rng, unsigned q) {
  const std::uint32_t a = 1u << q;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) {
    std::uniform_real_distribution<float> mu(-20.0f, float(a) + 20.0f);
    const float sigma = std::max(kSigmaFloor, float(std::exp(u(rng) * 6.0 - 3.0)) * float(a) / 8);
    return build_cdf_table(mu(rng), sigma, q);
  }
  std::vector<double> w(a);
  for (auto& v : w) v = std::pow(u(rng), 6.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::uint32_t> f(a);
  std::uint32_t sum = 0;
  for (std::uint32_t s = 0; s < a; ++s) {
    f[s] = 1 + static_cast<std::uint32_t>(w[s] / total * double(kCdfTotal - a));
    sum += f[s];
  }
  f[std::max_element(w.begin(), w.end()) - w.begin()] += kCdfTotal - sum;
  return cdf_from_frequencies(f);
}

Outcome rans_randomized() {
  std::mt19937_64 rng(20260401);
  std::uniform_int_distribution<std::uint32_t> ext(1, 24), depth(2, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t symbols = 0;
  for (int i = 0; i < 1000; ++i) {
    const Shape s{ext(rng), ext(rng), ext(rng)};
    const unsigned q = depth(rng);
    std::vector<CdfTable> tables;
    for (std::uint32_t c = 0; c < s.c; ++c) tables.push_back(random_table(rng, q));
    // Mostly model-matched symbols, some uniform ones to exercise rare bins.
    std::vector<std::uint32_t> v(s.size());
    std::uniform_int_distribution<std::uint32_t> slot(0, kCdfTotal - 1), any(0, (1u << q) - 1);
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = u(rng) < 0.9 ? tables[j / s.plane()].lookup(slot(rng)) : any(rng);
    }
    const Tensor t = Tensor::from_symbols(s, v, q);
    const auto a = rans_encode(t, tables);
    const auto b = rans_encode(t, tables);
    if (a != b) return {false, fmt::format("case {}: payload differs between runs", i)};
    if (!(rans_decode(a, tables, s, q) == t)) {
      return {false, fmt::format("case {}: decode differs", i)};
    }
    symbols += v.size();
  }
  return {true, fmt::format("1000 cases, {} symbols, bit-exact and deterministic", symbols)};
}

Outcome rans_vs_estimate() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> m(-3.0, 3.0), sd(0.1, 2.0);
    const Shape s{16, 64, 64};
    std::vector<float> v(s.size());
    for (std::uint32_t c = 0; c < s.c; ++c) {
      std::normal_distribution<double> n(m(rng), sd(rng));
      for (std::size_t p = 0; p < s.plane(); ++p) v[c * s.plane() + p] = float(n(rng));
    }
    const Tensor x(s, std::move(v));
    PipelineConfig cfg;
    cfg.q = 8;
    cfg.coder = RansGaussianCoder{};
    const auto c = compress(x, cfg);
    const double est = estimate_penalty(x, cfg).bits;
    worst = std::max(worst, std::abs(double(c.payload_bits) - est) / est);
  }
  return {worst <= 0.02, fmt::format("worst |actual - estimate| / estimate = {:.4f}% over 5 tensors "
                                     "(limit 2%)",
                                     100 * worst)};
}

Outcome quantizer_bound() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> ext(1, 12), depth(2, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t elements = 0, violations = 0, bad_tensors = 0;
  double worst_ulps = 0.0;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    const Shape s{ext(rng), ext(rng), ext(rng)};
    const double center = (u(rng) - 0.5) * std::pow(10.0, u(rng) * 4 - 1);
    const double spread = std::pow(10.0, u(rng) * 6 - 3);
    std::vector<float> v(s.size());
    for (auto& x : v) x = float(center + spread * (u(rng) - 0.5));
    const Tensor x(s, v);
    const unsigned q = depth(rng);
    const auto qt = quantize_uniform(x, q);
    const Tensor back = dequantize_uniform(qt.symbols, qt.params);
    const double half = qt.params.half_step();
    bool bad = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const float r = back.data<float>()[j];
      const double err = std::abs(double(r) - double(v[j]));
      ++elements;
      if (err > half) {
        ++violations;
        bad = true;
        const float a = std::abs(r);
        worst_ulps = std::max(worst_ulps, (err - half) / double(std::nextafter(a, INFINITY) - a));
        if (first.empty()) {
          first = fmt::format("first at tensor {} element {}: error {} > half step {} (q={})", i,
                              j, err, half, q);
        }
      }
    }
    bad_tensors += bad ? 1 : 0;
  }
  if (violations == 0) return {true, fmt::format("10000 tensors, {} elements within half step", elements)};
  return {false, fmt::format("{} of {} elements in {} tensors exceed half step, by at most {:.3f} "
                             "ulp of the f32 output; {}",
                             violations, elements, bad_tensors, worst_ulps, first)};
}

// Channels share one latent source: corr(x_i, x_j) = rho for i != j.
Tensor correlated(std::mt19937_64& rng, Shape s, double rho) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<float> v(s.size());
  for (std::size_t p = 0; p < s.plane(); ++p) {
    const double z = n(rng);
    for (std::uint32_t c = 0; c < s.c; ++c) {
      v[c * s.plane() + p] = float(std::sqrt(rho) * z + std::sqrt(1 - rho) * n(rng));
    }
  }
  return Tensor(s, std::move(v));
}

Outcome transform_benefit() {
  std::mt19937_64 rng(6);
  const Shape s{8, 64, 64};
  std::vector<Tensor> calib;
  for (int i = 0; i < 4; ++i) calib.push_back(correlated(rng, s, 0.9));
  const ChannelTransform pca = fit_pca_transform(calib);
  double worst = 1e9;
  for (int i = 0; i < 3; ++i) {
    const Tensor x = correlated(rng, s, 0.9);
    PipelineConfig base;
    base.coder = RansGaussianCoder{};
    PipelineConfig with = base;
    with.transform = pca;
    const double raw = double(uncompressed_bytes(s));
    const double r_id = raw / double(serialize(compress(x, base)).size());
    const double r_pca = raw / double(serialize(compress(x, with)).size());
    worst = std::min(worst, r_pca / r_id);
  }
  return {worst >= 1.2, fmt::format("PCA / identity ratio >= {:.3f} at rho=0.9 (need 1.2)", worst)};
}

std::uint64_t symeg_bits(std::span<const std::uint32_t> v, std::uint32_t ref) {
  std::uint64_t b = 0;
  for (auto x : v) b += symeg_length_oracle(x, ref);
  return b;
}

Outcome reference_selectors() {
  int wins = 0;
  std::uint32_t max_gap = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> mu(1.0, 3.5), sg(0.5, 1.2);
    std::uint64_t median_bits = 0, mean_bits = 0;
    for (int c = 0; c < 4; ++c) {
      std::lognormal_distribution<double> ln(mu(rng), sg(rng));
      std::vector<std::uint32_t> v(1024);
      for (auto& x : v) x = std::min<std::uint32_t>(255, static_cast<std::uint32_t>(ln(rng)));
      median_bits += symeg_bits(v, select_reference(v, ReferenceSelector::kMedian));
      mean_bits += symeg_bits(v, select_reference(v, ReferenceSelector::kMean));
    }
    if (median_bits <= mean_bits) ++wins;

    std::normal_distribution<double> sym(128.0, 20.0);
    std::vector<std::uint32_t> v(1024);
    for (auto& x : v) x = static_cast<std::uint32_t>(std::clamp(std::lround(sym(rng)), 0L, 255L));
    const auto a = select_reference(v, ReferenceSelector::kMedian);
    const auto b = select_reference(v, ReferenceSelector::kMean);
    max_gap = std::max(max_gap, a > b ? a - b : b - a);
  }
  return {wins >= 95 && max_gap <= 1,
          fmt::format("median <= mean bits on {}/100 skewed seeds (need 95); symmetric "
                      "|median - mean| <= {} (need 1)",
                      wins, max_gap)};
}

Outcome int8_fidelity() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::uint32_t> ch(1, 16), k(1, 5), sp(4, 16), st(1, 2), pd(0, 2);
  std::normal_distribution<float> wd(0.0f, 1.0f);
  std::uniform_real_distribution<float> xd(-1.0f, 1.0f);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FilterShape fs{ch(rng), ch(rng), k(rng), k(rng)};
    Filter w{fs, std::vector<float>(fs.size())};
    const float wscale = std::exp(wd(rng));
    for (auto& v : w.values) v = wd(rng) * wscale;
    std::vector<float> bias(fs.out);
    for (auto& b : bias) b = 0.1f * wd(rng);
    const Shape in{fs.in, fs.kh + sp(rng), fs.kw + sp(rng)};
    std::vector<float> xv(in.size());
    const float xscale = std::exp(wd(rng));
    for (auto& v : xv) v = xd(rng) * xscale;
    const Tensor x(in, xv);
    const ConvLayer layer(w, bias, st(rng), pd(rng), i % 3 == 0);
    const Tensor ref = conv_f32(layer, x);
    const Tensor q = conv_int8(layer, x, compute_int8_scales(layer, x));
    double num = 0, den = 0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const double d = double(q.data<float>()[j]) - ref.data<float>()[j];
      num += d * d;
      den += double(ref.data<float>()[j]) * ref.data<float>()[j];
    }
    if (den > 0) worst = std::max(worst, std::sqrt(num / den));
  }

  // Integer-representable fixtures: unit scales, so int8 must be exact.
  std::uniform_int_distribution<int> iv(-127, 127);
  for (int i = 0; i < 20; ++i) {
    const FilterShape fs{4, 3, 3, 3};
    Filter w{fs, std::vector<float>(fs.size())};
    for (auto& v : w.values) v = float(iv(rng));
    for (std::uint32_t o = 0; o < fs.out; ++o) w.values[o * fs.per_output() + o] = -127.0f;
    std::vector<float> xv(3 * 9 * 9);
    for (auto& v : xv) v = float(iv(rng));
    xv[5] = 127.0f;
    const Tensor x({3, 9, 9}, xv);
    const ConvLayer layer(w, {1.0f, -2.0f, 0.5f, 0.0f}, 1 + i % 2, i % 3);
    if (!(conv_int8(layer, x, compute_int8_scales(layer, x)) == conv_f32(layer, x))) {
      return {false, fmt::format("integer fixture {} differs", i)};
    }
  }
  return {worst <= 0.02,
          fmt::format("worst relative L2 = {:.4f}% over 100 layers (limit 2%); 20 integer "
                      "fixtures exact",
                      100 * worst)};
}

Outcome nm_sparsity() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint32_t> d(1, 8);
  std::uniform_int_distribution<int> coarse(-4, 4);
  std::normal_distribution<float> fine(0.0f, 1.0f);
  std::size_t groups = 0;
  for (int i = 0; i < 500; ++i) {
    const FilterShape fs{d(rng), d(rng), d(rng) % 3 + 1, d(rng) % 3 + 1};
    Filter w{fs, std::vector<float>(fs.size())};
    for (auto& v : w.values) v = i % 2 ? fine(rng) : 0.25f * float(coarse(rng));
    const SparseWeights s = apply_nm_sparsity(w, 2, 4);
    const std::size_t per = fs.per_output();
    for (std::uint32_t o = 0; o < fs.out; ++o) {
      for (std::size_t g = 0; g + 4 <= per; g += 4) {
        const std::size_t base = o * per + g;
        int kept = 0;
        double kept_mag = 0;
        for (int j = 0; j < 4; ++j) {
          if (s.mask.keep[base + j]) {
            ++kept;
            kept_mag += std::abs(w.values[base + j]);
          } else if (s.weights.values[base + j] != 0.0f) {
            return {false, "pruned weight left nonzero"};
          }
        }
        double best = 0;
        for (unsigned subset = 0; subset < 16; ++subset) {
          if (std::popcount(subset) > 2) continue;
          double m = 0;
          for (int j = 0; j < 4; ++j) if (subset >> j & 1) m += std::abs(w.values[base + j]);
          best = std::max(best, m);
        }
        if (kept > 2) return {false, fmt::format("filter {} group keeps {}", i, kept)};
        if (kept_mag != best) {
          return {false, fmt::format("filter {}: kept magnitude {} < best {}", i, kept_mag, best)};
        }
        ++groups;
      }
    }
    if (!s.mask.satisfies_constraint()) return {false, "mask violates 2:4"};
  }
  return {true, fmt::format("{} groups valid and magnitude-optimal", groups)};
}

Outcome accounting_fixtures() {
  std::vector<std::string> bad;
  if (uncompressed_bytes({128, 256, 384}) != 50331648u) bad.push_back("uncompressed bytes");

  for (Shape s : {Shape{1, 1, 1}, Shape{3, 7, 5}, Shape{16, 32, 32}, Shape{64, 13, 11}}) {
    const Tensor x(s, std::vector<float>(s.size(), -2.5f));
    const auto bytes = serialize(compress(x, PipelineConfig{}));
    const std::size_t expect = 34 + 4 * std::size_t{s.c} + (s.size() + 7) / 8;
    if (bytes.size() != expect) {
      bad.push_back(fmt::format("container {}x{}x{}: {} != {}", s.c, s.h, s.w, bytes.size(),
                                expect));
    }
  }

  const EnergyModel zero = EnergyModel::parse("mac_pj_fp32=0\nmac_pj_int8=0\n");
  const std::vector<LayerCost> base{{50331648, 1u << 30, 0}, {1000, 77, 0}};
  const std::vector<LayerCost> half{{25165824, 0, 1u << 30}, {500, 77, 0}};
  const double ratio = energy_report(base, half, zero).ratio;
  if (ratio != 2.0) bad.push_back(fmt::format("energy ratio {}", ratio));
  const EnergyModel defaults = EnergyModel::load(ACTPRESS_ENERGY_CONFIG);
  const EnergyModel zero_file = [&] {
    EnergyModel m = defaults;
    m.mac_pj_fp32 = m.mac_pj_int8 = 0.0;
    return m;
  }();
  if (energy_report(base, half, zero_file).ratio != 2.0) bad.push_back("energy ratio (file)");

  if (!bad.empty()) return {false, fmt::format("failed: {}", fmt::join(bad, "; "))};
  return {true, "50331648 bytes; 4 constant containers match 34 + 4C + ceil(CHW/8); energy "
                "ratio 2 exactly"};
}

Outcome cli_end_to_end() {
  const std::string cli = ACTPRESS_CLI;
  const fs::path dir =
      fs::temp_directory_path() / ("actpress_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{dir};
  using testing::quote;
  using testing::run_cli;

  struct Case {
    std::string flags;
    CoderSpec spec;
  };
  const std::vector<Case> cases{{"--coder symeg --ref median", SymegCoder{}},
                                {"--coder symeg --ref mean", SymegCoder{ReferenceSelector::kMean}},
                                {"--coder eg --k 4", EgCoder{4}},
                                {"--coder rans", RansGaussianCoder{}}};
  int round_trips = 0;
  std::vector<Tensor> acts;
  std::vector<CompressedActivation> conts;
  std::string list;
  for (const auto& fx : testing::make_fixtures()) {
    const fs::path in = dir / (fx.name + ".atns");
    write_tensor(fx.tensor, in);
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
      const auto& cs = cases[ci];
      PipelineConfig cfg;
      cfg.coder = cs.spec;
      const fs::path actc = dir / fmt::format("{}_{}.actc", fx.name, ci);
      const fs::path back = dir / fmt::format("{}_{}.atns.out", fx.name, ci);
      const auto r = run_cli(cli, "compress " + quote(in) + " " + quote(actc) + " " + cs.flags, dir);
      if (std::holds_alternative<RansGaussianCoder>(cs.spec) && fx.tensor.shape().plane() < 2) {
        if (r.exit_code != 1) return {false, fx.name + ": 1-pixel rans should be rejected"};
        continue;
      }
      const auto c = compress(fx.tensor, cfg);
      const auto bytes = serialize(c);
      const std::string want = format_compress_stats(uncompressed_bytes(fx.tensor.shape()),
                                                     bytes.size(), fx.tensor.size(),
                                                     c.payload_bits) +
                               "\n";
      if (r.exit_code != 0 || r.out != want) {
        return {false, fmt::format("{} {}: exit {} line '{}'", fx.name, cs.flags, r.exit_code, r.out)};
      }
      if (read_file(actc) != bytes) return {false, fx.name + ": container differs from library"};
      if (run_cli(cli, "decompress " + quote(actc) + " " + quote(back), dir).exit_code != 0) {
        return {false, fx.name + ": decompress failed"};
      }
      const Tensor recon = read_tensor(back);
      if (!(recon == decompress(c, cfg))) return {false, fx.name + ": reconstruction differs"};
      if (ci == 0) {
        acts.push_back(fx.tensor);
        conts.push_back(parse_container(bytes));
        list += fmt::format("{} {} {} {}\n", fx.name, in.filename().string(),
                            actc.filename().string(), 1000 * (acts.size()));
      }
      ++round_trips;
    }
  }

  // Exit-code contract.
  const fs::path good = dir / "gaussian_0.actc";
  auto corrupt = read_file(good);
  corrupt[corrupt.size() - 6] ^= 0x40;
  write_file(dir / "corrupt.actc", corrupt);
  auto trunc = read_file(good);
  trunc.resize(trunc.size() / 2);
  write_file(dir / "trunc.actc", trunc);
  const std::string in = quote(dir / "gaussian.atns");
  const std::vector<std::pair<std::string, int>> contract{
      {"compress " + quote(dir / "absent.atns") + " " + quote(dir / "o.actc"), 2},
      {"compress " + in + " " + quote(dir / "o.actc") + " --q 40", 1},
      {"compress " + in + " " + quote(dir / "o.actc") + " --coder lzma", 1},
      {"decompress " + quote(dir / "trunc.actc") + " " + quote(dir / "o.atns"), 3},
      {"decompress " + quote(dir / "corrupt.actc") + " " + quote(dir / "o.atns"), 3},
      {"decompress " + in + " " + quote(dir / "o.atns"), 3},
      {"estimate " + in + " --gamma 0.5", 0},
      {"", 1}};
  for (const auto& [args, code] : contract) {
    const auto r = run_cli(cli, args, dir);
    if (r.exit_code != code) {
      return {false, fmt::format("'{}' exited {} (expected {})", args, r.exit_code, code)};
    }
  }

  // Stats lines must equal the library formatting.
  {
    std::ofstream(dir / "layers.txt") << list;
  }
  const auto r = run_cli(cli, "stats " + quote(dir / "layers.txt") + " --energy-config " +
                                  quote(fs::path(ACTPRESS_ENERGY_CONFIG)),
                         dir);
  const auto out = testing::lines(r.out);
  const auto bw = bandwidth_report(acts, conts);
  std::vector<std::string> want;
  std::vector<LayerCost> base, pipe;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    want.push_back(format_layer_line(testing::make_fixtures()[i].name, bw.layers[i]));
    base.push_back({bw.layers[i].uncompressed_bytes, 1000 * (i + 1), 0});
    pipe.push_back({bw.layers[i].compressed_bytes, 1000 * (i + 1), 0});
  }
  want.push_back(format_aggregate_line(bw));
  want.push_back(format_energy_line(
      energy_report(base, pipe, EnergyModel::load(ACTPRESS_ENERGY_CONFIG))));
  if (r.exit_code != 0 || out.size() < want.size()) return {false, "stats failed"};
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (out[i] != want[i]) return {false, fmt::format("stats line '{}' != '{}'", out[i], want[i])};
  }
  return {true, fmt::format("{} round trips byte-identical to library, {} exit codes, {} stats "
                            "lines match",
                            round_trips, contract.size(), want.size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "SymEG exhaustive round trip and length", 60, symeg_exhaustive},
      {2, "EG-k exhaustive round trip", 30, eg_exhaustive},
      {3, "rANS exactness", 60, rans_randomized},
      {4, "rANS payload vs Gaussian estimate", 30, rans_vs_estimate},
      {5, "quantizer half-step bound", 30, quantizer_bound},
      {6, "decorrelating transform benefit", 60, transform_benefit},
      {7, "reference selector ordering", 30, reference_selectors},
      {8, "int8 convolution fidelity", 60, int8_fidelity},
      {9, "2:4 validity and optimality", 10, nm_sparsity},
      {10, "bandwidth and energy accounting", 10, accounting_fixtures},
      {11, "CLI end to end", 30, cli_end_to_end},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt::format(" [over time budget {}s]", c.budget_s);
    }
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("criterion {:>2}: {} {} ({:.2f}s): {}", c.id, o.pass ? "PASS" : "FAIL",
                             c.title, secs, o.detail)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failures, criteria.size())
            << std::endl;
  return failures == 0 ? 0 : 1;
}
