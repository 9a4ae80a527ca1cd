// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/enhancer.hpp"

#include <algorithm>

namespace perivox {

namespace {

FilterbankSpec filterbank_spec(const RunConfig& cfg) {
  FilterbankSpec spec;
  spec.sample_rate = cfg.sample_rate;
  spec.fc1 = cfg.fc1;
  spec.erb_step = cfg.erb_step;
  spec.num_filters = cfg.num_filters;
  spec.group_delay = cfg.group_delay;
  return spec;
}

}  // namespace

Enhancer::Enhancer(const RunConfig& cfg)
    : cfg_(cfg),
      grid_(PeriodGrid::from_f0_range(cfg.sample_rate, cfg.f0_min, cfg.f0_max)),
      analyzer_(design_filterbank(filterbank_spec(cfg))),
      assembler_(cfg.num_filters, FrameGeometry{cfg.frame_len, cfg.hop}),
      ola_(FrameGeometry{cfg.frame_len, cfg.hop}),
      tracker_(cfg, grid_, cfg.num_filters),
      noise_(cfg, cfg.num_filters),
      window_(synthesis_window(cfg.frame_len)) {
  cfg_.validate();
  use_envelope_.resize(cfg.num_filters);
  for (int k = 0; k < cfg.num_filters; ++k) {
    use_envelope_[k] = analyzer_.coeffs()[k].cf > cfg.cf_split;
  }
  gains_prev_.assign(cfg.num_filters, cfg.g_min);
  col_.resize(cfg.num_filters);
  summed_.resize(cfg.frame_len);
}

void Enhancer::reset() {
  analyzer_.reset();
  assembler_ = FrameAssembler(cfg_.num_filters,
                              FrameGeometry{cfg_.frame_len, cfg_.hop});
  ola_ = OverlapAdd(FrameGeometry{cfg_.frame_len, cfg_.hop});
  tracker_.reset();
  noise_.reset();
  gains_prev_.assign(cfg_.num_filters, cfg_.g_min);
  stats_ = Stats{};
}

void Enhancer::process(std::span<const double> in, std::vector<double>& out) {
  for (double x : in) {
    analyzer_.process_sample(x, col_.data());
    if (auto frame = assembler_.push_column(col_.data())) {
      handle_frame(*frame, out);
    }
  }
  stats_.samples_in += static_cast<long>(in.size());
}

void Enhancer::finish(std::vector<double>& out) {
  const long target = stats_.samples_in + cfg_.group_delay;
  std::vector<std::complex<double>> col(cfg_.num_filters);
  while (stats_.samples_out < target) {
    analyzer_.process_sample(0.0, col.data());
    if (auto frame = assembler_.push_column(col.data())) {
      handle_frame(*frame, out);
    }
  }
  const long excess = stats_.samples_out - target;
  if (excess > 0) {
    out.erase(out.end() - excess, out.end());
    stats_.samples_out = target;
  }
}

void Enhancer::handle_frame(const AnalysisFrame& frame,
                            std::vector<double>& out) {
  const PeriodicityMap map = compute_periodicity(frame, grid_, use_envelope_);
  const FrameDecision decision = tracker_.step(map, frame.energy);

  AprioriResult apriori =
      decision.periodic
          ? noise_.step_periodic(frame.energy,
                                 voiced_snr(map, grid_, decision.p0))
          : noise_.step_aperiodic(frame.energy);

  std::vector<double> gains = compute_gains(apriori.snr_hat, cfg_.g_min);
  smooth_gains(gains, gains_prev_, decision.periodic, cfg_);
  noise_.commit(gains, frame.energy);
  gains_prev_ = gains;

  ++stats_.frames;
  if (decision.periodic) ++stats_.periodic_frames;
  if (observer_) observer_(decision);

  const int N = cfg_.frame_len;
  std::fill(summed_.begin(), summed_.end(), 0.0);
  for (int k = 0; k < cfg_.num_filters; ++k) {
    const double g = gains[k];
    const double* u = frame.real_units.row(k);
    for (int n = 0; n < N; ++n) summed_[n] += g * u[n];
  }
  if (decision.periodic && cfg_.comb_enabled) {
    summed_ = comb_filter(summed_, decision.p0);
  }
  for (int n = 0; n < N; ++n) summed_[n] *= window_[n];
  ola_.add_frame(summed_, hop_out_);
  out.insert(out.end(), hop_out_.begin(), hop_out_.end());
  stats_.samples_out += static_cast<long>(hop_out_.size());
}

std::size_t Enhancer::state_bytes() const {
  return sizeof(*this) + analyzer_.state_bytes() + assembler_.state_bytes() +
         ola_.state_bytes() + tracker_.state_bytes() + noise_.state_bytes() +
         use_envelope_.capacity() / 8 + window_.capacity() * sizeof(double) +
         gains_prev_.capacity() * sizeof(double) +
         col_.capacity() * sizeof(std::complex<double>) +
         (summed_.capacity() + hop_out_.capacity()) * sizeof(double);
}

}  // namespace perivox
