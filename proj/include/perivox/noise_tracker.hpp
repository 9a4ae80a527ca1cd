// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_NOISE_TRACKER_HPP
#define PERIVOX_NOISE_TRACKER_HPP

#include <vector>

#include "perivox/config.hpp"

namespace perivox {

// Single-unit recursions.  All updates clamp against the noisy energy, so the
// noise estimate can never exceed what was observed.
double update_noise_aperiodic(double e_d_prev, double e_x, double beta);

// Voiced-frame noise update.  Units that look speech-dominated (snr_v >= 1)
// keep only the residual share of the energy; noise-dominated units fall back
// to the aperiodic recursion with fast re-initialization on energy jumps.
double update_noise_periodic(double e_d_prev, double e_x, double snr_v,
                             double beta_voiced, double beta_noise,
                             double beta_noise_fast);

// Decision-directed speech energy.
double update_speech(double e_x, double e_d, double g_prev, double e_x_prev,
                     double beta);

// A-priori SNR with a floored denominator.
double apriori_snr(double e_s, double e_d);

struct AprioriResult {
  std::vector<double> snr_hat;
  std::vector<double> e_d;
  std::vector<double> e_s;
};

// Per-stream state carrying the recursions across frames.  After the gain
// stage finalizes a frame's gains, commit() stores them for the next frame's
// decision-directed term.
class NoiseTracker {
 public:
  NoiseTracker(const RunConfig& cfg, int num_subbands);

  // Either step_* may be called once per frame, in frame order.
  AprioriResult step_aperiodic(const std::vector<double>& e_x);
  AprioriResult step_periodic(const std::vector<double>& e_x,
                              const std::vector<double>& snr_v);

  // Final (post-smoothing) gains of the frame just stepped.
  void commit(const std::vector<double>& gains,
              const std::vector<double>& e_x);

  void reset();

  const std::vector<double>& noise_energy() const { return e_d_; }
  std::size_t state_bytes() const;

 private:
  void ensure_init(const std::vector<double>& e_x);
  AprioriResult finish(const std::vector<double>& e_x,
                       const std::vector<bool>& fast_speech);

  RunConfig cfg_;
  int num_subbands_;
  bool initialized_ = false;
  std::vector<double> e_d_;
  std::vector<double> g_prev_;
  std::vector<double> e_x_prev_;
};

}  // namespace perivox

#endif  // PERIVOX_NOISE_TRACKER_HPP
