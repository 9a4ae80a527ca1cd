// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_FRAMING_HPP
#define PERIVOX_FRAMING_HPP

#include <complex>
#include <optional>
#include <vector>

#include "perivox/util.hpp"

namespace perivox {

struct FrameGeometry {
  int frame_len = 256;
  int hop = 128;  // must be frame_len / 2
};

// Normalized periodic Hamming window; adjacent half-overlapped copies sum to
// exactly one, so rectangular analysis plus this synthesis window is an
// identity.
std::vector<double> synthesis_window(int frame_len);

// One analysis frame of subband material.  real_units carry the waveform fine
// structure, env_units the per-unit zero-mean magnitude envelopes; energy is
// the per-subband sum of squared real samples.
struct AnalysisFrame {
  long index = 0;
  bool padded = false;  // true when end-of-stream zeros complete the frame
  Matrix<double> real_units;  // subbands x frame_len
  Matrix<double> env_units;   // subbands x frame_len
  std::vector<double> energy;
};

// Slices the streaming subband signals into overlapped frames: the first
// frame is complete after frame_len samples, then one frame every hop.
class FrameAssembler {
 public:
  FrameAssembler(int num_subbands, const FrameGeometry& geometry);

  // Pushes one column of subband samples (num_subbands values); returns a
  // frame when one just completed.
  std::optional<AnalysisFrame> push_column(const std::complex<double>* col);

  // Zero-pads to complete a pending partial frame at end of stream.
  std::optional<AnalysisFrame> flush();

  long frames_emitted() const { return frames_; }
  std::size_t state_bytes() const;

 private:
  AnalysisFrame make_frame();

  int num_subbands_;
  FrameGeometry geom_;
  Matrix<std::complex<double>> ring_;  // subbands x frame_len, circular columns
  long total_ = 0;
  long frames_ = 0;
};

// Streaming synthesis: frames of windowed samples in, hop samples out per
// frame, half-overlapped and summed.
class OverlapAdd {
 public:
  explicit OverlapAdd(const FrameGeometry& geometry);

  // frame holds frame_len windowed samples; out receives hop samples.
  void add_frame(const std::vector<double>& frame, std::vector<double>& out);

  // Remaining accumulator content after the last frame (frame_len - hop
  // samples).
  std::vector<double> tail() const;

  std::size_t state_bytes() const;

 private:
  FrameGeometry geom_;
  std::vector<double> acc_;
};

// Offline reconstruction used by tests and reference paths: per-frame
// subband units are gain-weighted, summed across subbands, windowed, and
// overlap-added.  unit_frames[j] is subbands x frame_len; gains is
// frames x subbands.  Output length is (frames - 1) * hop + frame_len.
std::vector<double> resynthesize(const std::vector<Matrix<double>>& unit_frames,
                                 const Matrix<double>& gains,
                                 const FrameGeometry& geometry);

}  // namespace perivox

#endif  // PERIVOX_FRAMING_HPP
