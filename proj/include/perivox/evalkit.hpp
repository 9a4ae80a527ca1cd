// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_EVALKIT_HPP
#define PERIVOX_EVALKIT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perivox {

// A pitch track: one F0 value per frame, 0 marking aperiodic frames.
struct PitchTrack {
  double hop_seconds = 0.016;
  std::vector<double> f0;  // Hz
};

struct ErrorRateReport {
  long misses = 0;        // voiced reference detected as unvoiced
  long false_alarms = 0;  // unvoiced reference detected as voiced
  long deviations = 0;    // both voiced, F0 off by more than 20%
  long total_frames = 0;
  bool trimmed = false;   // tracks had different lengths

  double rate_pct() const {
    return total_frames == 0
               ? 0.0
               : 100.0 * (misses + false_alarms + deviations) / total_frames;
  }
};

// Frame-by-frame comparison of a detected track against a reference; tracks
// of different lengths are trimmed to the shorter one.
ErrorRateReport p0_error_rate(const PitchTrack& detected,
                              const PitchTrack& reference);

// Overall SNR cap for numerically perfect reconstruction.
inline constexpr double kSnrCapDb = 120.0;

// 10*log10 of clean energy over residual energy; signals must be aligned.
double overall_snr_db(std::span<const double> clean,
                      std::span<const double> processed);

// Convenience: advances processed by delay samples, trims both to the common
// overlap, and measures.  Throws if the lengths disagree by more than
// max_len_slack after compensation.
double overall_snr_delayed_db(std::span<const double> clean,
                              std::span<const double> processed, int delay,
                              int max_len_slack = 256);

// Harmonic-complex oracle: per-frame F0 trajectory (0 = silence), rendered as
// equal-amplitude phase-continuous harmonics below fs/2, peak-normalized.
// F0 values are linearly interpolated between voiced frame centers.
// max_harmonics = 0 places no cap beyond Nyquist.
std::vector<double> synth_harmonic(const std::vector<double>& f0_per_frame,
                                   int hop, double fs, int max_harmonics = 0,
                                   double f0_lo = 70.0, double f0_hi = 420.0);

// Scales noise so 10*log10(clean energy / noise energy) hits the target and
// returns the mixture.  Noise is looped or trimmed to the clean length.
// +infinity returns the clean signal.  scaled_noise (optional) receives the
// noise as mixed.
std::vector<double> mix_at_snr(std::span<const double> clean,
                               std::span<const double> noise, double snr_db,
                               std::vector<double>* scaled_noise = nullptr);

// Deterministic Gaussian noise for tests and synthetic evaluations.
std::vector<double> white_noise(std::size_t len, std::uint32_t seed,
                                double sigma = 1.0);

// TSV pitch-track files: "frame_index<TAB>time_sec<TAB>f0_hz" per line.
void write_pitch_tsv(const std::string& path, const PitchTrack& track);
PitchTrack read_pitch_tsv(const std::string& path);

}  // namespace perivox

#endif  // PERIVOX_EVALKIT_HPP
