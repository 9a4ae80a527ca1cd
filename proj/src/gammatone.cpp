// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/gammatone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace perivox {

double erb_of(double f) { return 24.7 + 0.108 * f; }

double erb_scale(double f) { return 21.4 * std::log10(0.00437 * f + 1.0); }

double erb_scale_inv(double e) {
  return (std::pow(10.0, e / 21.4) - 1.0) / 0.00437;
}

std::vector<FilterCoeffs> design_filterbank(const FilterbankSpec& spec) {
  if (spec.sample_rate <= 0 || spec.fc1 <= 0 || spec.erb_step <= 0 ||
      spec.num_filters < 1 || spec.group_delay < 0) {
    throw std::invalid_argument("filterbank: degenerate spec");
  }
  std::vector<FilterCoeffs> bank;
  bank.reserve(spec.num_filters);
  const double e1 = erb_scale(spec.fc1);
  for (int k = 0; k < spec.num_filters; ++k) {
    FilterCoeffs fc;
    fc.cf = erb_scale_inv(e1 + k * spec.erb_step);
    if (fc.cf >= 0.5 * spec.sample_rate) {
      throw std::invalid_argument(
          "filterbank: CF ladder reaches Nyquist at subband " +
          std::to_string(k + 1));
    }
    fc.erb = erb_of(fc.cf);

    // Damping and carrier frequency in radians per sample.
    const double damp = 2.0 * kPi * kBandwidthRatio * fc.erb / spec.sample_rate;
    const double theta = 2.0 * kPi * fc.cf / spec.sample_rate;
    const double r = std::exp(-damp);
    fc.a = std::polar(r, theta);

    // Peak of the n^3 r^n envelope sits at 3/damp samples.
    fc.n_pe = static_cast<int>(std::lround(3.0 / damp));
    fc.d = std::max(0, spec.group_delay - fc.n_pe);

    // Carrier phase zero at the aligned envelope peak.
    fc.c = std::polar(1.0, -theta * std::min(spec.group_delay, fc.n_pe));

    // |H| at the CF is b * (r + 4r^2 + r^3) / (1 - r)^4; normalize the peak
    // response to sqrt(2) * erb_step so the bank sums to unity.
    const double peak = (r + 4.0 * r * r + r * r * r) / std::pow(1.0 - r, 4.0);
    fc.b = std::sqrt(2.0) * spec.erb_step / peak;

    bank.push_back(fc);
  }
  return bank;
}

std::vector<std::complex<double>> impulse_response(const FilterCoeffs& k,
                                                   int length) {
  std::vector<std::complex<double>> h(std::max(length, 0));
  const std::complex<double> scale = k.b * k.c;
  for (int n = k.d; n < length; ++n) {
    const double m = static_cast<double>(n - k.d);
    h[n] = scale * (m * m * m) * std::pow(k.a, m);
  }
  return h;
}

GammatoneAnalyzer::GammatoneAnalyzer(std::vector<FilterCoeffs> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("filterbank: no subbands");
  }
  bands_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const FilterCoeffs& c = coeffs_[i];
    Band& b = bands_[i];
    b.a = c.a;
    b.f1 = c.a;
    b.f2 = 4.0 * c.a * c.a;
    b.f3 = c.a * c.a * c.a;
    b.scale = c.b * c.c;
    b.delay.assign(c.d, {0.0, 0.0});
  }
  reset();
}

void GammatoneAnalyzer::reset() {
  x1_ = x2_ = x3_ = 0.0;
  for (Band& b : bands_) {
    b.s1 = b.s2 = b.s3 = b.s4 = {0.0, 0.0};
    std::fill(b.delay.begin(), b.delay.end(), std::complex<double>{0.0, 0.0});
    b.pos = 0;
  }
}

void GammatoneAnalyzer::process_sample(double x, std::complex<double>* out) {
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    Band& b = bands_[i];
    const std::complex<double> v = b.f1 * x1_ + b.f2 * x2_ + b.f3 * x3_;
    b.s1 = v + b.a * b.s1;
    b.s2 = b.s1 + b.a * b.s2;
    b.s3 = b.s2 + b.a * b.s3;
    b.s4 = b.s3 + b.a * b.s4;
    const std::complex<double> y = b.scale * b.s4;
    if (b.delay.empty()) {
      out[i] = y;
    } else {
      out[i] = b.delay[b.pos];
      b.delay[b.pos] = y;
      b.pos = (b.pos + 1 == static_cast<int>(b.delay.size())) ? 0 : b.pos + 1;
    }
  }
  x3_ = x2_;
  x2_ = x1_;
  x1_ = x;
}

void GammatoneAnalyzer::process(std::span<const double> x,
                                Matrix<std::complex<double>>& out) {
  out = Matrix<std::complex<double>>(bands_.size(), x.size());
  std::vector<std::complex<double>> col(bands_.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    process_sample(x[n], col.data());
    for (std::size_t k = 0; k < bands_.size(); ++k) out.at(k, n) = col[k];
  }
}

std::size_t GammatoneAnalyzer::state_bytes() const {
  std::size_t total = sizeof(*this) + bands_.capacity() * sizeof(Band) +
                      coeffs_.capacity() * sizeof(FilterCoeffs);
  for (const Band& b : bands_) {
    total += b.delay.capacity() * sizeof(std::complex<double>);
  }
  return total;
}

}  // namespace perivox
