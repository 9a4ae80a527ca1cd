// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_ENHANCER_HPP
#define PERIVOX_ENHANCER_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "perivox/config.hpp"
#include "perivox/framing.hpp"
#include "perivox/gain.hpp"
#include "perivox/gammatone.hpp"
#include "perivox/noise_tracker.hpp"
#include "perivox/periodicity.hpp"
#include "perivox/pitch_tracker.hpp"
#include "perivox/snr_map.hpp"

namespace perivox {

// Streaming enhancement engine: subband decomposition, framing, periodicity
// tracking, noise and a-priori SNR estimation, gains, optional comb
// reinforcement, and overlap-add resynthesis.  Holds fixed-size state, so
// arbitrarily long streams run in constant memory.
//
// Output sample m carries the enhanced image of input sample m - group_delay;
// finish() pads the stream so the last input samples' images are emitted,
// making the total output length input length + group_delay.
class Enhancer {
 public:
  struct Stats {
    long frames = 0;
    long periodic_frames = 0;
    long samples_in = 0;
    long samples_out = 0;
  };

  using DecisionObserver = std::function<void(const FrameDecision&)>;

  explicit Enhancer(const RunConfig& cfg);

  // Feeds samples and appends whatever output became ready.
  void process(std::span<const double> in, std::vector<double>& out);

  // Flushes the pipeline tail; call exactly once after the last process().
  void finish(std::vector<double>& out);

  void reset();

  // Called once per frame, after the decision is made.
  void set_decision_observer(DecisionObserver observer) {
    observer_ = std::move(observer);
  }

  const Stats& stats() const { return stats_; }
  const std::vector<FilterCoeffs>& coeffs() const {
    return analyzer_.coeffs();
  }
  const PeriodGrid& grid() const { return grid_; }
  std::size_t state_bytes() const;

 private:
  void handle_frame(const AnalysisFrame& frame, std::vector<double>& out);

  RunConfig cfg_;
  PeriodGrid grid_;
  GammatoneAnalyzer analyzer_;
  FrameAssembler assembler_;
  OverlapAdd ola_;
  PitchTracker tracker_;
  NoiseTracker noise_;
  std::vector<bool> use_envelope_;
  std::vector<double> window_;
  std::vector<double> gains_prev_;
  Stats stats_;
  DecisionObserver observer_;

  std::vector<std::complex<double>> col_;
  std::vector<double> summed_;
  std::vector<double> hop_out_;
};

}  // namespace perivox

#endif  // PERIVOX_ENHANCER_HPP
