// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_PERIODICITY_HPP
#define PERIVOX_PERIODICITY_HPP

#include <vector>

#include "perivox/framing.hpp"
#include "perivox/util.hpp"

namespace perivox {

// Cap on the comb filter ratio; keeps periodicity finite on noiseless
// periodic units where the difference energy vanishes.
inline constexpr double kCfrMax = 1e4;

// Floor on the periodicity degree.
inline constexpr double kPdFloor = 0.01;

// Candidate period range in samples, inclusive.
struct PeriodGrid {
  int p_min = 19;
  int p_max = 114;

  int size() const { return p_max - p_min + 1; }
  int period(int i) const { return p_min + i; }

  // Rounds the F0 search range [f0_min, f0_max] Hz to sample periods.
  static PeriodGrid from_f0_range(double sample_rate, double f0_min,
                                  double f0_max);
};

// Normalized autocorrelation of u[0..len) at the given lag, summed over
// n in [0, len-1-lag].  Zero when either segment has no energy.
double normalized_autocorr(const double* u, int len, int lag);

// Ratio of the energies of the lag-sum and lag-difference signals,
// capped at kCfrMax.
double comb_filter_ratio(const double* u, int len, int lag);

struct PeriodicityMap {
  Matrix<double> nac;  // subbands x grid.size()
  Matrix<double> cfr;
  Matrix<double> pd;   // max(kPdFloor, nac * cfr)
};

// Computes the periodicity degree of every subband unit at every candidate
// period.  Subbands flagged in use_envelope are analyzed on their zero-mean
// envelopes, the rest on the waveform fine structure.
PeriodicityMap compute_periodicity(const AnalysisFrame& frame,
                                   const PeriodGrid& grid,
                                   const std::vector<bool>& use_envelope);

}  // namespace perivox

#endif  // PERIVOX_PERIODICITY_HPP
