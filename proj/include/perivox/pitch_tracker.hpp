// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_PITCH_TRACKER_HPP
#define PERIVOX_PITCH_TRACKER_HPP

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "perivox/config.hpp"
#include "perivox/periodicity.hpp"

namespace perivox {

// Per-frame outcome of the periodicity tracker.
struct FrameDecision {
  long frame_index = 0;
  bool periodic = false;
  int p0 = 0;        // fundamental period in samples; 0 when aperiodic
  double f0 = 0.0;   // sample_rate / p0; 0 when aperiodic
  double pdthd1 = 0.0;
  double pdthd2 = 0.0;
  double max_peak = 0.0;  // largest peak value, 0 when no peaks
  std::vector<double> snr0;  // per-subband initial SNR
  std::vector<double> g0;    // per-subband initial Wiener weight
  std::vector<double> efpd;  // weighted frame periodicity over the grid
};

struct Thresholds {
  double pdthd1 = 0.0;
  double pdthd2 = 0.0;
};

// One step of the slow onset-robust noise follower: energy bursts more than
// delta above the estimate leave it untouched, everything else is smoothed in.
double update_stationary_noise(double e0d_prev, double e_x, double alpha,
                               double delta);

// Weighted frame periodicity: subband mean of g0(k) * pd(k, p).
std::vector<double> compute_efpd(const PeriodicityMap& map,
                                 const std::vector<double>& g0);

// Dual periodicity thresholds from the frame's mean initial SNR.
Thresholds compute_thresholds(const std::vector<double>& snr0,
                              const RunConfig& cfg);

// Grid-interior local maxima of efpd above pdthd2, as (period, value) pairs.
std::vector<std::pair<int, double>> detect_peaks(const std::vector<double>& efpd,
                                                 const PeriodGrid& grid,
                                                 double pdthd2);

// Online periodic/aperiodic decision and fundamental-period estimation.
class PitchTracker {
 public:
  PitchTracker(const RunConfig& cfg, const PeriodGrid& grid, int num_subbands);

  FrameDecision step(const PeriodicityMap& map,
                     const std::vector<double>& energy);

  void reset();

  const std::vector<double>& stationary_noise() const { return e0d_; }
  std::optional<double> memory_p0() const;
  std::size_t state_bytes() const;

 private:
  RunConfig cfg_;
  PeriodGrid grid_;
  int num_subbands_;
  long frame_index_ = 0;

  std::vector<double> e0d_;
  std::deque<int> mem_buf_;
  bool prev_potential_periodic_ = false;
  int no_peak_run_ = 0;
};

}  // namespace perivox

#endif  // PERIVOX_PITCH_TRACKER_HPP
