// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/resample.hpp"

#include <cmath>
#include <stdexcept>

#include "perivox/util.hpp"

namespace perivox {

namespace {

constexpr double kKaiserBeta = 12.0;

// Zeroth-order modified Bessel function of the first kind (power series).
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double q = 0.25 * x * x;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double kaiser(double t, double half_width) {
  const double u = t / half_width;
  if (std::abs(u) >= 1.0) return 0.0;
  return bessel_i0(kKaiserBeta * std::sqrt(1.0 - u * u)) /
         bessel_i0(kKaiserBeta);
}

double sinc(double t) {
  if (std::abs(t) < 1e-12) return 1.0;
  return std::sin(kPi * t) / (kPi * t);
}

}  // namespace

std::vector<double> resample_sinc(std::span<const double> x, double fs_in,
                                  double fs_out) {
  if (fs_in <= 0 || fs_out <= 0) {
    throw std::invalid_argument("resample: rates must be positive");
  }
  if (fs_in == fs_out) return std::vector<double>(x.begin(), x.end());
  if (x.empty()) return {};

  const double ratio = fs_out / fs_in;
  // Cutoff (cycles per input sample): 95% of the narrower Nyquist.  The wide
  // kernel keeps the transition band narrow enough that content just below
  // the band edge (a 3.44 kHz tone at an 8 kHz target) passes unattenuated.
  const double fc = 0.475 * std::min(1.0, ratio);
  const double half_width = 32.0 / fc;  // input samples
  const int out_len =
      static_cast<int>(std::lround(static_cast<double>(x.size()) * ratio));

  std::vector<double> y(out_len, 0.0);
  for (int m = 0; m < out_len; ++m) {
    const double center = m / ratio;
    const int lo = static_cast<int>(std::ceil(center - half_width));
    const int hi = static_cast<int>(std::floor(center + half_width));
    double acc = 0.0;
    for (int n = std::max(lo, 0);
         n <= std::min(hi, static_cast<int>(x.size()) - 1); ++n) {
      const double t = center - n;
      acc += x[n] * 2.0 * fc * sinc(2.0 * fc * t) * kaiser(t, half_width);
    }
    y[m] = acc;
  }
  return y;
}

}  // namespace perivox
