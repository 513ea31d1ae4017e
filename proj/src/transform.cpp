// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#include "actpress/transform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace actpress {
namespace {

using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kNullSpaceTolerance = 1e-6;

MatrixRM to_matrix(std::span<const float> m, std::uint32_t c) {
  MatrixRM out(c, c);
  for (std::uint32_t i = 0; i < c; ++i)
    for (std::uint32_t j = 0; j < c; ++j) out(i, j) = m[std::size_t{i} * c + j];
  return out;
}

std::vector<float> to_floats(const MatrixRM& m) {
  std::vector<float> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i * m.cols() + j)] = static_cast<float>(m(i, j));
  return out;
}

Tensor mix(std::span<const float> matrix, std::span<const float> bias, std::uint32_t side,
           const Tensor& x) {
  const Shape s = x.shape();
  if (s.c != side) {
    throw Error(ErrorKind::kShape, "transform expects " + std::to_string(side) +
                                       " channels, tensor has " + std::to_string(s.c));
  }
  const auto in = x.data<float>();
  const std::size_t plane = s.plane();
  std::vector<float> out(in.size());
  std::vector<double> pixel(side);
  for (std::size_t p = 0; p < plane; ++p) {
    for (std::uint32_t c = 0; c < side; ++c) pixel[c] = in[c * plane + p];
    for (std::uint32_t r = 0; r < side; ++r) {
      double acc = bias[r];
      const float* row = matrix.data() + std::size_t{r} * side;
      for (std::uint32_t c = 0; c < side; ++c) acc += row[c] * pixel[c];
      out[r * plane + p] = static_cast<float>(acc);
    }
  }
  return Tensor(s, std::move(out));
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::kShape, std::string(what) + " has " + std::to_string(got) +
                                       " entries, expected " + std::to_string(want));
  }
}

}  // namespace

ChannelTransform ChannelTransform::identity() { return {}; }

ChannelTransform ChannelTransform::conv1x1(std::uint32_t channels, std::vector<float> forward,
                                           std::vector<float> forward_bias,
                                           std::vector<float> inverse,
                                           std::vector<float> inverse_bias) {
  if (channels == 0) throw Error(ErrorKind::kShape, "transform needs at least one channel");
  const std::size_t sq = std::size_t{channels} * channels;
  if (forward_bias.empty()) forward_bias.assign(channels, 0.0f);
  if (inverse_bias.empty()) inverse_bias.assign(channels, 0.0f);
  check_size(forward.size(), sq, "forward matrix");
  check_size(inverse.size(), sq, "inverse matrix");
  check_size(forward_bias.size(), channels, "forward bias");
  check_size(inverse_bias.size(), channels, "inverse bias");

  ChannelTransform t;
  t.kind_ = TransformKind::kConv1x1;
  t.channels_ = channels;
  t.forward_ = std::move(forward);
  t.forward_bias_ = std::move(forward_bias);
  t.inverse_ = std::move(inverse);
  t.inverse_bias_ = std::move(inverse_bias);
  return t;
}

ChannelTransform ChannelTransform::from_forward(std::uint32_t channels,
                                                std::vector<float> forward,
                                                std::vector<float> forward_bias) {
  if (channels == 0) throw Error(ErrorKind::kShape, "transform needs at least one channel");
  check_size(forward.size(), std::size_t{channels} * channels, "forward matrix");
  if (forward_bias.empty()) forward_bias.assign(channels, 0.0f);
  check_size(forward_bias.size(), channels, "forward bias");

  const MatrixRM m = to_matrix(forward, channels);
  Eigen::FullPivLU<MatrixRM> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorKind::kParameter, "forward matrix is singular");
  const MatrixRM inv = lu.inverse();
  Eigen::VectorXd b(channels);
  for (std::uint32_t i = 0; i < channels; ++i) b(i) = forward_bias[i];
  const Eigen::VectorXd inv_b = -inv * b;

  std::vector<float> inverse_bias(channels);
  for (std::uint32_t i = 0; i < channels; ++i) inverse_bias[i] = static_cast<float>(inv_b(i));
  return conv1x1(channels, std::move(forward), std::move(forward_bias), to_floats(inv),
                 std::move(inverse_bias));
}

Tensor apply_forward(const ChannelTransform& t, const Tensor& x) {
  if (t.kind() == TransformKind::kIdentity) return x;
  return mix(t.forward_matrix(), t.forward_bias(), t.channels(), x);
}

Tensor apply_inverse(const ChannelTransform& t, const Tensor& y) {
  if (t.kind() == TransformKind::kIdentity) return y;
  return mix(t.inverse_matrix(), t.inverse_bias(), t.channels(), y);
}

ChannelTransform fit_pca_transform(std::span<const Tensor> samples) {
  if (samples.size() < 2) throw Error(ErrorKind::kParameter, "need at least two sample tensors");
  const std::uint32_t c = samples.front().shape().c;
  std::size_t pixels = 0;
  for (const auto& s : samples) {
    if (s.shape().c != c) throw Error(ErrorKind::kShape, "samples differ in channel count");
    pixels += s.shape().plane();
  }
  if (pixels <= c) {
    throw Error(ErrorKind::kParameter, "need more calibration pixels than channels");
  }

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(c);
  for (const auto& s : samples) {
    const auto v = s.data<float>();
    const std::size_t plane = s.shape().plane();
    for (std::uint32_t ch = 0; ch < c; ++ch)
      for (std::size_t p = 0; p < plane; ++p) mean(ch) += v[ch * plane + p];
  }
  mean /= static_cast<double>(pixels);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(c, c);
  Eigen::VectorXd d(c);
  for (const auto& s : samples) {
    const auto v = s.data<float>();
    const std::size_t plane = s.shape().plane();
    for (std::size_t p = 0; p < plane; ++p) {
      for (std::uint32_t ch = 0; ch < c; ++ch) d(ch) = v[ch * plane + p] - mean(ch);
      cov.selfadjointView<Eigen::Lower>().rankUpdate(d);
    }
  }
  cov = cov.selfadjointView<Eigen::Lower>();
  cov /= static_cast<double>(pixels - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kParameter, "covariance eigendecomposition failed");
  }
  const Eigen::VectorXd& eval = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evec = solver.eigenvectors();
  const double top = std::max(eval(c - 1), 0.0);

  MatrixRM basis(c, c);
  Eigen::Index kept = 0;
  for (Eigen::Index i = c - 1; i >= 0; --i) {
    if (top <= 0.0 || eval(i) <= kNullSpaceTolerance * top) break;
    Eigen::VectorXd v = evec.col(i);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    basis.row(kept++) = v.transpose();
  }
  // Complete the null space from e_0, e_1, ... in order.
  for (std::uint32_t j = 0; j < c && kept < c; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(c, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index r = 0; r < kept; ++r) v -= basis.row(r).dot(v) * basis.row(r).transpose();
    }
    const double norm = v.norm();
    if (norm < 1e-3) continue;
    basis.row(kept++) = (v / norm).transpose();
  }

  const Eigen::VectorXd fwd_bias = -basis * mean;
  std::vector<float> fb(c), ib(c);
  for (std::uint32_t i = 0; i < c; ++i) {
    fb[i] = static_cast<float>(fwd_bias(i));
    ib[i] = static_cast<float>(mean(i));
  }
  const MatrixRM inverse = basis.transpose();
  return ChannelTransform::conv1x1(c, to_floats(basis), std::move(fb), to_floats(inverse),
                                   std::move(ib));
}

namespace {

std::vector<float> load_vector(const std::filesystem::path& p, Shape expect, const char* what) {
  const Tensor t = read_tensor(p);
  if (t.shape() != expect) {
    throw Error(ErrorKind::kShape, std::string(what) + " in " + p.string() +
                                       " has the wrong extents");
  }
  const auto v = t.data<float>();
  return {v.begin(), v.end()};
}

}  // namespace

ChannelTransform load_transform(const std::filesystem::path& dir) {
  const Tensor fwd = read_tensor(dir / "forward.atns");
  const std::uint32_t c = fwd.shape().c;
  if (fwd.shape() != Shape{c, c, 1}) {
    throw Error(ErrorKind::kShape, "forward.atns must be C x C x 1");
  }
  const auto fv = fwd.data<float>();
  std::vector<float> forward(fv.begin(), fv.end());
  std::vector<float> forward_bias;
  if (std::filesystem::exists(dir / "forward_bias.atns")) {
    forward_bias = load_vector(dir / "forward_bias.atns", {c, 1, 1}, "forward bias");
  }
  if (!std::filesystem::exists(dir / "inverse.atns")) {
    return ChannelTransform::from_forward(c, std::move(forward), std::move(forward_bias));
  }
  auto inverse = load_vector(dir / "inverse.atns", {c, c, 1}, "inverse matrix");
  std::vector<float> inverse_bias;
  if (std::filesystem::exists(dir / "inverse_bias.atns")) {
    inverse_bias = load_vector(dir / "inverse_bias.atns", {c, 1, 1}, "inverse bias");
  }
  return ChannelTransform::conv1x1(c, std::move(forward), std::move(forward_bias),
                                   std::move(inverse), std::move(inverse_bias));
}

void save_transform(const ChannelTransform& t, const std::filesystem::path& dir) {
  if (t.kind() != TransformKind::kConv1x1) {
    throw Error(ErrorKind::kParameter, "identity transforms have no parameter files");
  }
  std::filesystem::create_directories(dir);
  const std::uint32_t c = t.channels();
  auto vec = [](std::span<const float> s) { return std::vector<float>(s.begin(), s.end()); };
  write_tensor(Tensor({c, c, 1}, vec(t.forward_matrix())), dir / "forward.atns");
  write_tensor(Tensor({c, 1, 1}, vec(t.forward_bias())), dir / "forward_bias.atns");
  write_tensor(Tensor({c, c, 1}, vec(t.inverse_matrix())), dir / "inverse.atns");
  write_tensor(Tensor({c, 1, 1}, vec(t.inverse_bias())), dir / "inverse_bias.atns");
}

}  // namespace actpress
