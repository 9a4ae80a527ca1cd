// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/gain.hpp"

#include <algorithm>
#include <stdexcept>

namespace perivox {

double wiener_gain(double snr_hat, double g_min) {
  const double s2 = snr_hat * snr_hat;
  return std::max(g_min, s2 / (s2 + 1.0));
}

std::vector<double> compute_gains(const std::vector<double>& snr_hat,
                                  double g_min) {
  std::vector<double> g(snr_hat.size());
  for (std::size_t k = 0; k < snr_hat.size(); ++k) {
    g[k] = wiener_gain(snr_hat[k], g_min);
  }
  return g;
}

void smooth_gains(std::vector<double>& gains,
                  const std::vector<double>& gains_prev, bool frame_periodic,
                  const RunConfig& cfg) {
  if (gains_prev.size() != gains.size()) {
    throw std::invalid_argument("gain: previous-frame size mismatch");
  }
  if (frame_periodic) return;
  const std::vector<double> pre = gains;
  const std::size_t K = gains.size();
  for (std::size_t k = 0; k < K; ++k) {
    const bool left_ok = k == 0 || pre[k - 1] < cfg.smooth_adjacent;
    const bool right_ok = k + 1 == K || pre[k + 1] < cfg.smooth_adjacent;
    if (gains_prev[k] < cfg.smooth_prev && left_ok && right_ok &&
        pre[k] < cfg.smooth_current) {
      gains[k] = cfg.g_min;
    }
  }
}

std::vector<double> comb_filter(const std::vector<double>& unit, int p0) {
  const int N = static_cast<int>(unit.size());
  if (p0 <= 0 || p0 >= N / 2) {
    throw std::invalid_argument("comb: period must be in (0, N/2)");
  }
  std::vector<double> out(N);
  for (int n = 0; n < N; ++n) {
    const int m = n <= N / 2 ? n + p0 : n - p0;
    out[n] = 0.5 * (unit[n] + unit[m]);
  }
  return out;
}

}  // namespace perivox
