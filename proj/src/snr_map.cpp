// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/snr_map.hpp"

#include <cmath>
#include <stdexcept>

namespace perivox {

double pd_of_snr(double s) {
  if (s < 0.0) throw std::invalid_argument("snr_map: negative SNR");
  return s / (s + 1.0) * (2.0 * s + 1.0);
}

double snr_of_pd(double pd) {
  if (pd <= 0.0) return 0.0;
  return (pd - 1.0 + std::sqrt(pd * pd + 6.0 * pd + 1.0)) / 4.0;
}

std::vector<double> voiced_snr(const PeriodicityMap& map, const PeriodGrid& grid,
                               int p0) {
  if (p0 < grid.p_min || p0 > grid.p_max) {
    throw std::invalid_argument("snr_map: period off the grid");
  }
  const int i = p0 - grid.p_min;
  std::vector<double> snr(map.pd.rows());
  for (std::size_t k = 0; k < map.pd.rows(); ++k) {
    snr[k] = snr_of_pd(map.pd.at(k, i));
  }
  return snr;
}

}  // namespace perivox
