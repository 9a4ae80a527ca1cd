// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/pitch_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perivox/snr_map.hpp"

namespace perivox {

namespace {

constexpr double kEnergyFloor = 1e-12;

// Consecutive empty frames after which pitch continuity is dropped.
constexpr int kContinuityResetRun = 3;

// Band-limited noise rings inside a subband at that subband's own carrier
// period, which shows up as a tall EFPD peak fed by one subband and its
// neighbor; the gain weighting cannot suppress it because short-window
// subband energies fluctuate far above any stationary estimate.  Genuine
// pitch correlates most subbands at the period lag, so the subband-mean
// autocorrelation at a candidate lag separates the two regardless of level,
// and no single unit can dominate a bounded mean.  Starting a track (or
// feeding the pitch memory) requires the higher bar; holding an established
// track uses the lower one, since heavily corrupted voiced frames sag well
// below the trigger level while ringing artifacts sit near zero and drop a
// false track within a frame or two.
constexpr double kMinMeanNacTrigger = 0.15;
constexpr double kMinMeanNacHold = 0.05;

double clamp(double v, double lo, double hi) {
  return std::min(hi, std::max(lo, v));
}

double median(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double update_stationary_noise(double e0d_prev, double e_x, double alpha,
                               double delta) {
  double e0d;
  if (e_x > delta * e0d_prev) {
    e0d = e0d_prev;  // onset: energy burst must not raise the noise estimate
  } else {
    e0d = alpha * e0d_prev + (1.0 - alpha) * e_x;
  }
  return std::max(e0d, kEnergyFloor);
}

std::vector<double> compute_efpd(const PeriodicityMap& map,
                                 const std::vector<double>& g0) {
  const std::size_t K = map.pd.rows();
  const std::size_t P = map.pd.cols();
  if (g0.size() != K) {
    throw std::invalid_argument("tracker: weight count mismatch");
  }
  std::vector<double> efpd(P, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const double* row = map.pd.row(k);
    const double w = g0[k];
    for (std::size_t i = 0; i < P; ++i) efpd[i] += w * row[i];
  }
  for (double& v : efpd) v /= static_cast<double>(K);
  return efpd;
}

Thresholds compute_thresholds(const std::vector<double>& snr0,
                              const RunConfig& cfg) {
  double fsnr0 = 0.0;
  for (double s : snr0) fsnr0 += s;
  if (!snr0.empty()) fsnr0 /= static_cast<double>(snr0.size());

  const double x =
      fsnr0 > 0.0 ? clamp(10.0 * std::log10(fsnr0), 0.0, 30.0) : 0.0;
  const double s1 =
      clamp(cfg.snr1_base + cfg.snr1_slope * (x - 10.0), cfg.snr1_min, cfg.snr1_max);
  const double s2 =
      clamp(cfg.snr2_base + cfg.snr2_slope * (x - 10.0), cfg.snr2_min, cfg.snr2_max);
  Thresholds t;
  t.pdthd1 = pd_of_snr(s1);
  t.pdthd2 = pd_of_snr(s2);
  return t;
}

std::vector<std::pair<int, double>> detect_peaks(const std::vector<double>& efpd,
                                                 const PeriodGrid& grid,
                                                 double pdthd2) {
  if (static_cast<int>(efpd.size()) != grid.size()) {
    throw std::invalid_argument("tracker: efpd length mismatch");
  }
  std::vector<std::pair<int, double>> peaks;
  for (int i = 1; i + 1 < static_cast<int>(efpd.size()); ++i) {
    if (efpd[i] > efpd[i - 1] && efpd[i] > efpd[i + 1] && efpd[i] > pdthd2) {
      peaks.emplace_back(grid.period(i), efpd[i]);
    }
  }
  return peaks;
}

PitchTracker::PitchTracker(const RunConfig& cfg, const PeriodGrid& grid,
                           int num_subbands)
    : cfg_(cfg), grid_(grid), num_subbands_(num_subbands) {
  if (num_subbands < 1) {
    throw std::invalid_argument("tracker: need at least one subband");
  }
  reset();
}

void PitchTracker::reset() {
  frame_index_ = 0;
  e0d_.clear();
  mem_buf_.clear();
  prev_potential_periodic_ = false;
  no_peak_run_ = 0;
}

std::optional<double> PitchTracker::memory_p0() const {
  if (mem_buf_.empty()) return std::nullopt;
  return median(std::vector<int>(mem_buf_.begin(), mem_buf_.end()));
}

FrameDecision PitchTracker::step(const PeriodicityMap& map,
                                 const std::vector<double>& energy) {
  if (static_cast<int>(energy.size()) != num_subbands_ ||
      static_cast<int>(map.pd.rows()) != num_subbands_) {
    throw std::invalid_argument("tracker: subband count mismatch");
  }

  FrameDecision d;
  d.frame_index = frame_index_++;

  // Frames whose analysis window overlaps the filterbank fill-in carry
  // systematically low energies; seeding the follower there would make every
  // later frame look like an onset and freeze the estimate.  Seed on the
  // largest energy seen across the fill-in span so that narrow subbands,
  // whose short-window energies scatter widely, do not anchor the estimate
  // to one unlucky low draw.  The recursion takes over afterwards.
  const long warmup =
      (cfg_.group_delay + cfg_.frame_len + cfg_.hop - 1) / cfg_.hop;
  if (d.frame_index < warmup) {
    if (e0d_.empty()) e0d_.assign(num_subbands_, kEnergyFloor);
    for (int k = 0; k < num_subbands_; ++k) {
      e0d_[k] = std::max(e0d_[k], std::max(energy[k], kEnergyFloor));
    }
  } else {
    for (int k = 0; k < num_subbands_; ++k) {
      e0d_[k] = update_stationary_noise(e0d_[k], energy[k], cfg_.alpha_onset,
                                        cfg_.delta_onset);
    }
  }

  d.snr0.resize(num_subbands_);
  d.g0.resize(num_subbands_);
  for (int k = 0; k < num_subbands_; ++k) {
    d.snr0[k] = std::max(0.0, energy[k] / e0d_[k] - 1.0);
    d.g0[k] = d.snr0[k] / (d.snr0[k] + 1.0);
  }

  d.efpd = compute_efpd(map, d.g0);
  const Thresholds thd = compute_thresholds(d.snr0, cfg_);
  d.pdthd1 = thd.pdthd1;
  d.pdthd2 = thd.pdthd2;

  const std::vector<std::pair<int, double>> peaks =
      detect_peaks(d.efpd, grid_, thd.pdthd2);

  // Subband-mean autocorrelation at one candidate lag.
  const auto mean_nac = [&](int period) {
    const int i = period - grid_.p_min;
    double acc = 0.0;
    for (int k = 0; k < num_subbands_; ++k) acc += map.nac.at(k, i);
    return acc / static_cast<double>(num_subbands_);
  };

  if (peaks.empty()) {
    d.periodic = false;
    if (++no_peak_run_ >= kContinuityResetRun) prev_potential_periodic_ = false;
    return d;
  }
  no_peak_run_ = 0;

  // Largest peak; scanning in ascending period order breaks ties toward the
  // shorter period, preferring the fundamental over subharmonics.
  int p_max = peaks.front().first;
  double v_max = peaks.front().second;
  for (const auto& [p, v] : peaks) {
    if (v > v_max) {
      p_max = p;
      v_max = v;
    }
  }
  d.max_peak = v_max;

  if (v_max > thd.pdthd1 && mean_nac(p_max) >= kMinMeanNacTrigger) {
    mem_buf_.push_back(p_max);
    while (static_cast<int>(mem_buf_.size()) > cfg_.memory_depth) {
      mem_buf_.pop_front();
    }
  }
  std::optional<double> mem_p0;
  if (!mem_buf_.empty()) {
    mem_p0 = median(std::vector<int>(mem_buf_.begin(), mem_buf_.end()));
    if (std::abs(p_max - *mem_p0) < cfg_.memory_deviation * *mem_p0) {
      mem_p0 = p_max;  // frame-local update toward an in-range jump
    }
  }

  if (prev_potential_periodic_) {
    int cand = p_max;
    if (mem_p0) {
      int best = peaks.front().first;
      double best_dist = std::abs(best - *mem_p0);
      for (const auto& [p, v] : peaks) {
        const double dist = std::abs(p - *mem_p0);
        if (dist < best_dist) {
          best = p;
          best_dist = dist;
        }
      }
      cand = best;
    }
    if (mean_nac(cand) >= kMinMeanNacHold) {
      d.periodic = true;
      d.p0 = cand;
    } else {
      d.periodic = false;
    }
  } else if (v_max > thd.pdthd1 && mean_nac(p_max) >= kMinMeanNacTrigger) {
    d.periodic = true;
    d.p0 = p_max;
  } else {
    d.periodic = false;
  }

  prev_potential_periodic_ = d.periodic;
  if (d.periodic) d.f0 = cfg_.sample_rate / d.p0;
  return d;
}

std::size_t PitchTracker::state_bytes() const {
  // The period memory is bounded by its configured depth; report the bound so
  // the footprint reads as the fixed budget it is.
  return sizeof(*this) + e0d_.capacity() * sizeof(double) +
         static_cast<std::size_t>(cfg_.memory_depth) * sizeof(int);
}

}  // namespace perivox
