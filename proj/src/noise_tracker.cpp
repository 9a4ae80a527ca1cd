// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/noise_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace perivox {

namespace {
constexpr double kDenomFloor = 1e-12;
}

double update_noise_aperiodic(double e_d_prev, double e_x, double beta) {
  return std::min(e_x, beta * e_d_prev + (1.0 - beta) * e_x);
}

double update_noise_periodic(double e_d_prev, double e_x, double snr_v,
                             double beta_voiced, double beta_noise,
                             double beta_noise_fast) {
  if (snr_v >= 1.0) {
    return std::min(e_x, beta_voiced * e_d_prev +
                             (1.0 - beta_voiced) * e_x / (snr_v + 1.0));
  }
  const double e_init = update_noise_aperiodic(e_d_prev, e_x, beta_noise);
  if (e_x < 2.0 * e_init) return e_init;
  return update_noise_aperiodic(e_d_prev, e_x, beta_noise_fast);
}

double update_speech(double e_x, double e_d, double g_prev, double e_x_prev,
                     double beta) {
  const double ml = e_x - e_d;  // nonnegative: e_d is clamped to e_x
  return std::min(e_x, beta * g_prev * e_x_prev + (1.0 - beta) * ml);
}

double apriori_snr(double e_s, double e_d) {
  return e_s / std::max(e_d, kDenomFloor);
}

NoiseTracker::NoiseTracker(const RunConfig& cfg, int num_subbands)
    : cfg_(cfg), num_subbands_(num_subbands) {
  if (num_subbands < 1) {
    throw std::invalid_argument("noise tracker: need at least one subband");
  }
  reset();
}

void NoiseTracker::reset() {
  initialized_ = false;
  e_d_.assign(num_subbands_, 0.0);
  g_prev_.assign(num_subbands_, cfg_.g_min);
  e_x_prev_.assign(num_subbands_, 0.0);
}

void NoiseTracker::ensure_init(const std::vector<double>& e_x) {
  if (static_cast<int>(e_x.size()) != num_subbands_) {
    throw std::invalid_argument("noise tracker: subband count mismatch");
  }
  if (!initialized_) {
    e_d_ = e_x;  // the stream is assumed to open in noise
    initialized_ = true;
  }
}

AprioriResult NoiseTracker::step_aperiodic(const std::vector<double>& e_x) {
  ensure_init(e_x);
  for (int k = 0; k < num_subbands_; ++k) {
    e_d_[k] = update_noise_aperiodic(e_d_[k], e_x[k], cfg_.beta_noise);
  }
  return finish(e_x, std::vector<bool>(num_subbands_, false));
}

AprioriResult NoiseTracker::step_periodic(const std::vector<double>& e_x,
                                          const std::vector<double>& snr_v) {
  ensure_init(e_x);
  if (static_cast<int>(snr_v.size()) != num_subbands_) {
    throw std::invalid_argument("noise tracker: snr_v count mismatch");
  }
  std::vector<bool> fast_speech(num_subbands_, false);
  for (int k = 0; k < num_subbands_; ++k) {
    e_d_[k] = update_noise_periodic(e_d_[k], e_x[k], snr_v[k],
                                    cfg_.beta_voiced, cfg_.beta_noise,
                                    cfg_.beta_noise_fast);
    fast_speech[k] = snr_v[k] < 1.0;
  }
  return finish(e_x, fast_speech);
}

AprioriResult NoiseTracker::finish(const std::vector<double>& e_x,
                                   const std::vector<bool>& fast_speech) {
  AprioriResult r;
  r.e_d = e_d_;
  r.e_s.resize(num_subbands_);
  r.snr_hat.resize(num_subbands_);
  for (int k = 0; k < num_subbands_; ++k) {
    const double beta =
        fast_speech[k] ? cfg_.beta_speech_fast : cfg_.beta_speech;
    r.e_s[k] = update_speech(e_x[k], e_d_[k], g_prev_[k], e_x_prev_[k], beta);
    r.snr_hat[k] = apriori_snr(r.e_s[k], e_d_[k]);
  }
  return r;
}

void NoiseTracker::commit(const std::vector<double>& gains,
                          const std::vector<double>& e_x) {
  if (static_cast<int>(gains.size()) != num_subbands_ ||
      static_cast<int>(e_x.size()) != num_subbands_) {
    throw std::invalid_argument("noise tracker: commit size mismatch");
  }
  g_prev_ = gains;
  e_x_prev_ = e_x;
}

std::size_t NoiseTracker::state_bytes() const {
  return sizeof(*this) +
         (e_d_.capacity() + g_prev_.capacity() + e_x_prev_.capacity()) *
             sizeof(double);
}

}  // namespace perivox
