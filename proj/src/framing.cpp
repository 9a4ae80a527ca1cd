// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/framing.hpp"

#include <cmath>
#include <stdexcept>

namespace perivox {

namespace {

void check_geometry(const FrameGeometry& g) {
  if (g.frame_len <= 0 || g.hop <= 0 || g.frame_len != 2 * g.hop) {
    throw std::invalid_argument("framing: frame_len must be 2 * hop");
  }
}

}  // namespace

std::vector<double> synthesis_window(int frame_len) {
  if (frame_len <= 0 || frame_len % 2 != 0) {
    throw std::invalid_argument("framing: window length must be even");
  }
  std::vector<double> w(frame_len);
  for (int n = 0; n < frame_len; ++n) {
    w[n] = (0.54 - 0.46 * std::cos(2.0 * kPi * n / frame_len)) / 1.08;
  }
  return w;
}

FrameAssembler::FrameAssembler(int num_subbands, const FrameGeometry& geometry)
    : num_subbands_(num_subbands), geom_(geometry) {
  if (num_subbands < 1) {
    throw std::invalid_argument("framing: need at least one subband");
  }
  check_geometry(geom_);
  ring_ = Matrix<std::complex<double>>(num_subbands, geom_.frame_len);
}

std::optional<AnalysisFrame> FrameAssembler::push_column(
    const std::complex<double>* col) {
  const int slot = static_cast<int>(total_ % geom_.frame_len);
  for (int k = 0; k < num_subbands_; ++k) ring_.at(k, slot) = col[k];
  ++total_;
  if (total_ >= geom_.frame_len &&
      (total_ - geom_.frame_len) % geom_.hop == 0) {
    return make_frame();
  }
  return std::nullopt;
}

std::optional<AnalysisFrame> FrameAssembler::flush() {
  if (total_ == 0) return std::nullopt;
  const bool pending =
      total_ < geom_.frame_len || (total_ - geom_.frame_len) % geom_.hop != 0;
  if (!pending) return std::nullopt;
  const std::vector<std::complex<double>> zeros(num_subbands_, {0.0, 0.0});
  std::optional<AnalysisFrame> frame;
  while (!(frame = push_column(zeros.data()))) {
  }
  frame->padded = true;
  return frame;
}

AnalysisFrame FrameAssembler::make_frame() {
  const int N = geom_.frame_len;
  AnalysisFrame f;
  f.index = frames_++;
  f.real_units = Matrix<double>(num_subbands_, N);
  f.env_units = Matrix<double>(num_subbands_, N);
  f.energy.assign(num_subbands_, 0.0);
  for (int k = 0; k < num_subbands_; ++k) {
    double* re = f.real_units.row(k);
    double* env = f.env_units.row(k);
    double energy = 0.0;
    double env_mean = 0.0;
    for (int n = 0; n < N; ++n) {
      const std::complex<double>& z = ring_.at(k, (total_ + n) % N);
      re[n] = z.real();
      env[n] = std::sqrt(z.real() * z.real() + z.imag() * z.imag());
      energy += re[n] * re[n];
      env_mean += env[n];
    }
    env_mean /= N;
    for (int n = 0; n < N; ++n) env[n] -= env_mean;
    f.energy[k] = energy;
  }
  return f;
}

std::size_t FrameAssembler::state_bytes() const {
  return sizeof(*this) +
         ring_.data().capacity() * sizeof(std::complex<double>);
}

OverlapAdd::OverlapAdd(const FrameGeometry& geometry) : geom_(geometry) {
  check_geometry(geom_);
  acc_.assign(geom_.frame_len, 0.0);
}

void OverlapAdd::add_frame(const std::vector<double>& frame,
                           std::vector<double>& out) {
  if (static_cast<int>(frame.size()) != geom_.frame_len) {
    throw std::invalid_argument("overlap-add: frame length mismatch");
  }
  for (int n = 0; n < geom_.frame_len; ++n) acc_[n] += frame[n];
  out.assign(acc_.begin(), acc_.begin() + geom_.hop);
  const int rest = geom_.frame_len - geom_.hop;
  for (int n = 0; n < rest; ++n) acc_[n] = acc_[n + geom_.hop];
  for (int n = rest; n < geom_.frame_len; ++n) acc_[n] = 0.0;
}

std::vector<double> OverlapAdd::tail() const {
  return std::vector<double>(acc_.begin(),
                             acc_.begin() + (geom_.frame_len - geom_.hop));
}

std::size_t OverlapAdd::state_bytes() const {
  return sizeof(*this) + acc_.capacity() * sizeof(double);
}

std::vector<double> resynthesize(const std::vector<Matrix<double>>& unit_frames,
                                 const Matrix<double>& gains,
                                 const FrameGeometry& geometry) {
  check_geometry(geometry);
  const std::size_t J = unit_frames.size();
  if (gains.rows() != J) {
    throw std::invalid_argument("resynthesize: gain rows != frame count");
  }
  const int N = geometry.frame_len;
  const std::vector<double> w = synthesis_window(N);
  OverlapAdd ola(geometry);
  std::vector<double> summed(N), hop_out;
  std::vector<double> out;
  if (J > 0) out.reserve((J - 1) * geometry.hop + N);
  for (std::size_t j = 0; j < J; ++j) {
    const Matrix<double>& units = unit_frames[j];
    if (static_cast<int>(units.cols()) != N || units.rows() != gains.cols()) {
      throw std::invalid_argument("resynthesize: unit shape mismatch");
    }
    std::fill(summed.begin(), summed.end(), 0.0);
    for (std::size_t k = 0; k < units.rows(); ++k) {
      const double g = gains.at(j, k);
      if (g < 0.0 || g > 1.0) {
        throw std::invalid_argument("resynthesize: gain outside [0, 1]");
      }
      const double* u = units.row(k);
      for (int n = 0; n < N; ++n) summed[n] += g * u[n];
    }
    for (int n = 0; n < N; ++n) summed[n] *= w[n];
    ola.add_frame(summed, hop_out);
    out.insert(out.end(), hop_out.begin(), hop_out.end());
  }
  const std::vector<double> tail = ola.tail();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace perivox
