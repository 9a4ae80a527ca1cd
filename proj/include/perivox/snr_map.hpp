// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_SNR_MAP_HPP
#define PERIVOX_SNR_MAP_HPP

#include <vector>

#include "perivox/periodicity.hpp"

namespace perivox {

// Expected periodicity degree of a sinusoid-in-noise unit at per-unit SNR s:
// the autocorrelation term contributes s/(s+1) and the comb ratio 2s+1.
double pd_of_snr(double s);

// Inverse of pd_of_snr (exact positive root); clamps to 0 for pd <= 0.
double snr_of_pd(double pd);

// Per-subband SNR of a voiced frame, read off the periodicity map at the
// detected period p0 (a grid period in samples).
std::vector<double> voiced_snr(const PeriodicityMap& map, const PeriodGrid& grid,
                               int p0);

}  // namespace perivox

#endif  // PERIVOX_SNR_MAP_HPP
