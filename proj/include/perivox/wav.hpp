// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_WAV_HPP
#define PERIVOX_WAV_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace perivox {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct WavData {
  double sample_rate = 0.0;
  std::vector<double> samples;  // mono, nominally in [-1, 1]
};

// Reads a mono RIFF/WAVE file holding 16-bit PCM or 32-bit float samples.
// Multichannel or other formats raise IoError with a descriptive message.
WavData read_wav(const std::string& path);

struct WriteResult {
  bool clipped = false;   // true when samples exceeded full scale
  double peak = 0.0;      // pre-normalization peak magnitude
};

// Writes 16-bit PCM.  Samples beyond full scale cause the whole signal to be
// peak-normalized; the result reports it so callers can warn.
WriteResult write_wav_pcm16(const std::string& path,
                            std::span<const double> samples,
                            double sample_rate);

// Writes 32-bit float samples verbatim.
void write_wav_float32(const std::string& path,
                       std::span<const double> samples, double sample_rate);

}  // namespace perivox

#endif  // PERIVOX_WAV_HPP
