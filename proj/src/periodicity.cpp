// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perivox {

namespace {

struct LagSums {
  double xx = 0.0;  // energy of the leading segment
  double yy = 0.0;  // energy of the lagged segment
  double xy = 0.0;  // cross term
};

LagSums lag_sums(const double* u, int len, int lag) {
  LagSums s;
  for (int n = 0; n + lag < len; ++n) {
    s.xx += u[n] * u[n];
    s.yy += u[n + lag] * u[n + lag];
    s.xy += u[n] * u[n + lag];
  }
  return s;
}

double nac_from(const LagSums& s) {
  if (s.xx <= 0.0 || s.yy <= 0.0) return 0.0;
  return s.xy / std::sqrt(s.xx * s.yy);
}

double cfr_from(const LagSums& s) {
  const double num = std::max(0.0, s.xx + 2.0 * s.xy + s.yy);
  const double den = std::max(0.0, s.xx - 2.0 * s.xy + s.yy);
  if (den <= 1e-12 * (num + 1e-20)) return kCfrMax;
  return std::min(num / den, kCfrMax);
}

}  // namespace

PeriodGrid PeriodGrid::from_f0_range(double sample_rate, double f0_min,
                                     double f0_max) {
  PeriodGrid g;
  g.p_min = static_cast<int>(std::lround(sample_rate / f0_max));
  g.p_max = static_cast<int>(std::lround(sample_rate / f0_min));
  if (g.p_min < 1 || g.p_max < g.p_min) {
    throw std::invalid_argument("periodicity: empty period grid");
  }
  return g;
}

double normalized_autocorr(const double* u, int len, int lag) {
  if (lag < 0 || lag >= len) {
    throw std::invalid_argument("periodicity: lag outside unit");
  }
  return nac_from(lag_sums(u, len, lag));
}

double comb_filter_ratio(const double* u, int len, int lag) {
  if (lag < 0 || lag >= len) {
    throw std::invalid_argument("periodicity: lag outside unit");
  }
  return cfr_from(lag_sums(u, len, lag));
}

PeriodicityMap compute_periodicity(const AnalysisFrame& frame,
                                   const PeriodGrid& grid,
                                   const std::vector<bool>& use_envelope) {
  const int K = static_cast<int>(frame.real_units.rows());
  const int N = static_cast<int>(frame.real_units.cols());
  if (static_cast<int>(use_envelope.size()) != K) {
    throw std::invalid_argument("periodicity: band flag count mismatch");
  }
  if (grid.p_max >= N) {
    throw std::invalid_argument("periodicity: longest period exceeds frame");
  }
  const int P = grid.size();
  PeriodicityMap map;
  map.nac = Matrix<double>(K, P);
  map.cfr = Matrix<double>(K, P);
  map.pd = Matrix<double>(K, P);

  std::vector<double> prefix(N + 1);
  for (int k = 0; k < K; ++k) {
    const double* u =
        use_envelope[k] ? frame.env_units.row(k) : frame.real_units.row(k);
    prefix[0] = 0.0;
    for (int n = 0; n < N; ++n) prefix[n + 1] = prefix[n] + u[n] * u[n];
    for (int i = 0; i < P; ++i) {
      const int p = grid.period(i);
      LagSums s;
      for (int n = 0; n + p < N; ++n) s.xy += u[n] * u[n + p];
      s.xx = prefix[N - p];
      s.yy = prefix[N] - prefix[p];
      const double nac = nac_from(s);
      const double cfr = cfr_from(s);
      map.nac.at(k, i) = nac;
      map.cfr.at(k, i) = cfr;
      map.pd.at(k, i) = std::max(kPdFloor, nac * cfr);
    }
  }
  return map;
}

}  // namespace perivox
