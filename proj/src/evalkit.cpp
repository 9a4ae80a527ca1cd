// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "perivox/util.hpp"
#include "perivox/wav.hpp"

namespace perivox {

ErrorRateReport p0_error_rate(const PitchTrack& detected,
                              const PitchTrack& reference) {
  if (detected.f0.empty() || reference.f0.empty()) {
    throw std::invalid_argument("error rate: empty pitch track");
  }
  ErrorRateReport r;
  const std::size_t n = std::min(detected.f0.size(), reference.f0.size());
  r.trimmed = detected.f0.size() != reference.f0.size();
  r.total_frames = static_cast<long>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double det = detected.f0[j];
    const double ref = reference.f0[j];
    const bool det_voiced = det > 0.0;
    const bool ref_voiced = ref > 0.0;
    if (ref_voiced && !det_voiced) {
      ++r.misses;
    } else if (!ref_voiced && det_voiced) {
      ++r.false_alarms;
    } else if (ref_voiced && det_voiced &&
               std::abs(det - ref) > 0.2 * ref) {
      ++r.deviations;
    }
  }
  return r;
}

double overall_snr_db(std::span<const double> clean,
                      std::span<const double> processed) {
  if (clean.size() != processed.size()) {
    throw std::invalid_argument("overall SNR: length mismatch");
  }
  if (clean.empty()) throw std::invalid_argument("overall SNR: empty signal");
  double es = 0.0, er = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    es += clean[i] * clean[i];
    const double d = clean[i] - processed[i];
    er += d * d;
  }
  if (es <= 0.0) throw std::invalid_argument("overall SNR: all-zero clean signal");
  if (er <= 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(es / er));
}

double overall_snr_delayed_db(std::span<const double> clean,
                              std::span<const double> processed, int delay,
                              int max_len_slack) {
  if (delay < 0 || processed.size() < static_cast<std::size_t>(delay)) {
    throw std::invalid_argument("overall SNR: processed shorter than delay");
  }
  const std::size_t avail = processed.size() - delay;
  const long mismatch =
      static_cast<long>(avail) - static_cast<long>(clean.size());
  if (std::abs(mismatch) > max_len_slack) {
    throw std::invalid_argument(
        "overall SNR: length mismatch beyond delay compensation");
  }
  const std::size_t overlap = std::min(avail, clean.size());
  return overall_snr_db(clean.subspan(0, overlap),
                        processed.subspan(delay, overlap));
}

std::vector<double> synth_harmonic(const std::vector<double>& f0_per_frame,
                                   int hop, double fs, int max_harmonics,
                                   double f0_lo, double f0_hi) {
  if (hop <= 0 || fs <= 0) {
    throw std::invalid_argument("synth: bad hop or sample rate");
  }
  for (double f : f0_per_frame) {
    if (f != 0.0 && (f < f0_lo || f > f0_hi)) {
      throw std::invalid_argument("synth: F0 outside the tracking range");
    }
  }
  const long J = static_cast<long>(f0_per_frame.size());
  std::vector<double> s(J * hop, 0.0);
  if (J == 0) return s;

  // Instantaneous F0 at sample n: linear between voiced frame centers, the
  // frame's own value next to voiced/unvoiced boundaries.
  auto inst_f0 = [&](long n) -> double {
    const double own = f0_per_frame[n / hop];
    if (own <= 0.0) return 0.0;
    const double pos = (static_cast<double>(n) / hop) - 0.5;  // in frames
    long j0 = static_cast<long>(std::floor(pos));
    long j1 = j0 + 1;
    if (j0 < 0 || j1 >= J) return own;
    const double a = f0_per_frame[j0];
    const double b = f0_per_frame[j1];
    if (a > 0.0 && b > 0.0) {
      const double t = pos - j0;
      return a + (b - a) * t;
    }
    return own;
  };

  double phase = 0.0;
  double peak = 0.0;
  for (long n = 0; n < J * hop; ++n) {
    const double f = inst_f0(n);
    if (f <= 0.0) {
      phase = 0.0;
      continue;
    }
    int h_max = static_cast<int>(std::floor((0.5 * fs - 1e-9) / f));
    if (max_harmonics > 0) h_max = std::min(h_max, max_harmonics);
    double v = 0.0;
    for (int h = 1; h <= h_max; ++h) v += std::sin(h * phase);
    s[n] = v;
    peak = std::max(peak, std::abs(v));
    phase += 2.0 * kPi * f / fs;
    if (phase > 2.0 * kPi) phase -= 2.0 * kPi;
  }
  if (peak > 0.0) {
    for (double& v : s) v /= peak;
  }
  return s;
}

std::vector<double> mix_at_snr(std::span<const double> clean,
                               std::span<const double> noise, double snr_db,
                               std::vector<double>* scaled_noise) {
  if (clean.empty()) throw std::invalid_argument("mix: empty clean signal");
  double es = 0.0;
  for (double v : clean) es += v * v;
  if (es <= 0.0) throw std::invalid_argument("mix: zero-energy clean signal");

  if (std::isinf(snr_db) && snr_db > 0) {
    if (scaled_noise) scaled_noise->assign(clean.size(), 0.0);
    return std::vector<double>(clean.begin(), clean.end());
  }
  if (noise.empty()) throw std::invalid_argument("mix: empty noise signal");

  std::vector<double> d(clean.size());
  double ed = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    d[i] = noise[i % noise.size()];
    ed += d[i] * d[i];
  }
  if (ed <= 0.0) throw std::invalid_argument("mix: zero-energy noise");

  const double scale = std::sqrt(es / (ed * std::pow(10.0, snr_db / 10.0)));
  std::vector<double> y(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    d[i] *= scale;
    y[i] = clean[i] + d[i];
  }
  if (scaled_noise) *scaled_noise = std::move(d);
  return y;
}

std::vector<double> white_noise(std::size_t len, std::uint32_t seed,
                                double sigma) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  std::vector<double> x(len);
  for (double& v : x) v = dist(rng);
  return x;
}

void write_pitch_tsv(const std::string& path, const PitchTrack& track) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char line[96];
  for (std::size_t j = 0; j < track.f0.size(); ++j) {
    std::snprintf(line, sizeof(line), "%zu\t%.6f\t%.4f\n", j,
                  j * track.hop_seconds, track.f0[j]);
    out << line;
  }
  if (!out) throw IoError("short write to '" + path + "'");
}

PitchTrack read_pitch_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  PitchTrack track;
  std::vector<double> times;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    long idx;
    double t, f0;
    if (!(ss >> idx >> t >> f0) || f0 < 0.0 || !std::isfinite(f0)) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected 'index<TAB>time<TAB>f0'");
    }
    times.push_back(t);
    track.f0.push_back(f0);
  }
  if (times.size() >= 2) track.hop_seconds = times[1] - times[0];
  return track;
}

}  // namespace perivox
