// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_RESAMPLE_HPP
#define PERIVOX_RESAMPLE_HPP

#include <span>
#include <vector>

namespace perivox {

// Windowed-sinc sample-rate conversion (Kaiser window).  Passband is flat to
// well under 0.1 dB up to 92% of the narrower Nyquist.  Equal rates return
// the input unchanged.
std::vector<double> resample_sinc(std::span<const double> x, double fs_in,
                                  double fs_out);

}  // namespace perivox

#endif  // PERIVOX_RESAMPLE_HPP
