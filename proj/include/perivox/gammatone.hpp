// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_GAMMATONE_HPP
#define PERIVOX_GAMMATONE_HPP

#include <complex>
#include <span>
#include <vector>

#include "perivox/util.hpp"

namespace perivox {

// Ratio between the equivalent rectangular bandwidth of the auditory filter
// and the bandwidth parameter of the fourth-order gammatone that models it.
inline constexpr double kBandwidthRatio = 1.019;

// Equivalent rectangular bandwidth (Hz) of the auditory filter centered at
// frequency f (Hz).
double erb_of(double f);

// Position of frequency f (Hz) on the ERB-number scale, and its inverse.
double erb_scale(double f);
double erb_scale_inv(double e);

struct FilterbankSpec {
  double sample_rate = 8000.0;
  double fc1 = 80.0;      // center frequency of the lowest subband, Hz
  double erb_step = 0.5;  // CF spacing in ERB units
  int num_filters = 47;
  int group_delay = 128;  // target envelope-peak position, samples
};

// One subband of the complex gammatone filterbank
//
//   y_k = b * c * z^-d * (a z^-1 + 4 a^2 z^-2 + a^3 z^-3) / (1 - a z^-1)^4
//
// whose impulse response is b * c * (n-d)^3 * a^(n-d): a gamma envelope under
// a complex carrier at the center frequency.
struct FilterCoeffs {
  std::complex<double> a;  // pole, |a| < 1
  double b;                // gain normalizing the peak response to sqrt(2)*erb_step
  std::complex<double> c;  // carrier phase alignment at the envelope peak
  int d;                   // integer delay equalizing envelope peaks, samples
  double cf;               // center frequency, Hz
  double erb;              // equivalent rectangular bandwidth at cf, Hz
  int n_pe;                // envelope peak position of the undelayed filter, samples
};

// Designs the full bank with CFs stepped uniformly on the ERB-number scale
// starting at spec.fc1.  Throws std::invalid_argument if the spec is
// degenerate or the ladder reaches the Nyquist frequency.
std::vector<FilterCoeffs> design_filterbank(const FilterbankSpec& spec);

// Closed-form impulse response of one subband, length samples from n = 0.
std::vector<std::complex<double>> impulse_response(const FilterCoeffs& k,
                                                   int length);

// Streaming analysis: one real input sample in, one complex sample per
// subband out.  Phase-corrected so that every subband's envelope peaks
// group_delay samples after an impulse, with carrier phase zero at the peak.
class GammatoneAnalyzer {
 public:
  explicit GammatoneAnalyzer(std::vector<FilterCoeffs> coeffs);

  int num_subbands() const { return static_cast<int>(bands_.size()); }
  const std::vector<FilterCoeffs>& coeffs() const { return coeffs_; }

  void reset();

  // out must hold num_subbands() values.
  void process_sample(double x, std::complex<double>* out);

  // Columns of out are consecutive samples; out is resized to
  // num_subbands() x x.size().
  void process(std::span<const double> x, Matrix<std::complex<double>>& out);

  // Bytes held in filter state and delay lines (fixed after construction).
  std::size_t state_bytes() const;

 private:
  struct Band {
    std::complex<double> a;
    std::complex<double> f1, f2, f3;  // a, 4a^2, a^3
    std::complex<double> scale;       // b * c
    std::complex<double> s1, s2, s3, s4;
    std::vector<std::complex<double>> delay;  // ring buffer, length d (may be 0)
    int pos = 0;
  };

  std::vector<FilterCoeffs> coeffs_;
  std::vector<Band> bands_;
  double x1_ = 0.0, x2_ = 0.0, x3_ = 0.0;  // shared real input history
};

}  // namespace perivox

#endif  // PERIVOX_GAMMATONE_HPP
