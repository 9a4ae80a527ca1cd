// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "perivox/gain.hpp"
#include "test_util.hpp"

using perivox::RunConfig;
using perivox::comb_filter;
using perivox::compute_gains;
using perivox::smooth_gains;
using perivox::wiener_gain;

TEST_CASE("gain curve") {
  CHECK(wiener_gain(1.0, 0.178) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wiener_gain(0.0, 0.178) == 0.178);
  CHECK(wiener_gain(1e6, 0.178) == doctest::Approx(1.0).epsilon(1e-9));
  // Squaring makes suppression steeper than the plain Wiener rule below
  // unity SNR.
  CHECK(wiener_gain(0.5, 0.0) < 0.5 / (0.5 + 1.0));
  for (double s = 0.0; s < 50.0; s += 0.37) {
    const double g = wiener_gain(s, 0.178);
    CHECK(g >= 0.178);
    CHECK(g <= 1.0);
  }
  const auto gains = compute_gains({0.0, 1.0, 3.0}, 0.178);
  REQUIRE(gains.size() == 3);
  CHECK(gains[0] == 0.178);
  CHECK(gains[1] == doctest::Approx(0.5));
  CHECK(gains[2] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("isolated weak gains are floored in aperiodic frames") {
  const RunConfig cfg;
  std::vector<double> gains = {0.2, 0.5, 0.2};
  std::vector<double> prev = {0.5, 0.05, 0.5};
  smooth_gains(gains, prev, false, cfg);
  // Middle unit: prev 0.05 < 0.1, neighbors 0.2 < 0.3, current 0.5 < 0.6.
  CHECK(gains[1] == cfg.g_min);
  CHECK(gains[0] == 0.2);
  CHECK(gains[2] == 0.2);
}

TEST_CASE("periodic frames are left untouched") {
  const RunConfig cfg;
  std::vector<double> gains = {0.2, 0.5, 0.2};
  const std::vector<double> prev = {0.05, 0.05, 0.05};
  const auto before = gains;
  smooth_gains(gains, prev, true, cfg);
  CHECK(gains == before);
}

TEST_CASE("strong units resist smoothing") {
  const RunConfig cfg;
  // Current gain at or above the limit survives.
  std::vector<double> gains = {0.2, 0.7, 0.2};
  std::vector<double> prev = {0.5, 0.05, 0.5};
  smooth_gains(gains, prev, false, cfg);
  CHECK(gains[1] == 0.7);

  // A strong neighbor blocks the floor.
  gains = {0.5, 0.5, 0.2};
  prev = {0.5, 0.05, 0.5};
  smooth_gains(gains, prev, false, cfg);
  CHECK(gains[1] == 0.5);

  // A strong previous-frame gain blocks it too.
  gains = {0.2, 0.5, 0.2};
  prev = {0.5, 0.5, 0.5};
  smooth_gains(gains, prev, false, cfg);
  CHECK(gains[1] == 0.5);
}

TEST_CASE("edge subbands use their single neighbor") {
  const RunConfig cfg;
  std::vector<double> gains = {0.5, 0.25, 0.9};
  std::vector<double> prev = {0.05, 0.5, 0.05};
  smooth_gains(gains, prev, false, cfg);
  // k = 0: right neighbor 0.25 < 0.3 and prev 0.05 < 0.1 -> floored.
  CHECK(gains[0] == cfg.g_min);
  // k = 2: left neighbor 0.25 < 0.3 but current 0.9 >= 0.6 -> kept.
  CHECK(gains[2] == 0.9);
}

TEST_CASE("smoothing reads pre-smoothing neighbors, not its own output") {
  const RunConfig cfg;
  // k = 0 gets floored; if the pass re-read its own output, the new 0.178
  // would satisfy k = 1's neighbor test and cascade the floor down the row.
  std::vector<double> gains = {0.5, 0.25, 0.2};
  std::vector<double> prev = {0.05, 0.05, 0.5};
  smooth_gains(gains, prev, false, cfg);
  CHECK(gains[0] == cfg.g_min);
  CHECK(gains[1] == 0.25);  // left neighbor was 0.5 before the pass
}

TEST_CASE("smoothing validates the previous-frame size") {
  const RunConfig cfg;
  std::vector<double> gains = {0.5, 0.5};
  const std::vector<double> prev = {0.5};
  CHECK_THROWS_AS(smooth_gains(gains, prev, false, cfg),
                  std::invalid_argument);
}

TEST_CASE("comb filter passes an exactly periodic unit") {
  const auto u = testutil::sine(256, 200.0, 8000.0);  // period 40
  const auto y = comb_filter(u, 40);
  REQUIRE(y.size() == u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    CHECK(y[n] == doctest::Approx(u[n]).epsilon(1e-9));
  }
}

TEST_CASE("comb filter cancels the half-harmonic") {
  // 700 Hz at period 40 sits exactly between harmonics of 200 Hz: the
  // periodic partner arrives in antiphase and the average vanishes.
  const auto u = testutil::sine(256, 700.0, 8000.0);
  const auto y = comb_filter(u, 40);
  CHECK(testutil::rms(y) < 1e-9);
}

TEST_CASE("comb filter halves broadband noise energy") {
  std::vector<double> gains_db;
  for (unsigned trial = 0; trial < 200; ++trial) {
    const auto u = testutil::gauss_noise(256, 40000 + trial);
    const auto y = comb_filter(u, 40);
    gains_db.push_back(
        testutil::db(testutil::energy(y) / testutil::energy(u)));
  }
  const double med = testutil::median(gains_db);
  CHECK(med > -3.5);
  CHECK(med < -2.5);
}

TEST_CASE("comb filter validates the period") {
  const std::vector<double> u(256, 1.0);
  CHECK_THROWS_AS(comb_filter(u, 0), std::invalid_argument);
  CHECK_THROWS_AS(comb_filter(u, 128), std::invalid_argument);
  CHECK_THROWS_AS(comb_filter(u, 200), std::invalid_argument);
  CHECK(comb_filter(u, 127).size() == 256);  // largest legal period
}
