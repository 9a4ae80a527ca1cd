// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_GAIN_HPP
#define PERIVOX_GAIN_HPP

#include <vector>

#include "perivox/config.hpp"

namespace perivox {

// Revised Wiener gain: the squared SNR steepens suppression at low SNR while
// keeping the floor audible.
double wiener_gain(double snr_hat, double g_min);

std::vector<double> compute_gains(const std::vector<double>& snr_hat,
                                  double g_min);

// Suppresses isolated low-gain blocks in aperiodic frames: a unit whose
// previous-frame gain and current neighbors are all weak is pulled to the
// floor.  Conditions test the pre-smoothing values of the current frame; edge
// subbands use their single neighbor.
void smooth_gains(std::vector<double>& gains,
                  const std::vector<double>& gains_prev, bool frame_periodic,
                  const RunConfig& cfg);

// Feed-forward comb reinforcement at the detected period: each sample is
// averaged with its periodic partner, looking forward in the first half of
// the unit and backward in the second half so no delay is introduced.
std::vector<double> comb_filter(const std::vector<double>& unit, int p0);

}  // namespace perivox

#endif  // PERIVOX_GAIN_HPP
