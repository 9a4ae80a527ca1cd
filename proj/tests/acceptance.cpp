// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.
//
// Acceptance gate: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "perivox/enhancer.hpp"
#include "perivox/evalkit.hpp"
#include "perivox/framing.hpp"
#include "perivox/gammatone.hpp"
#include "perivox/noise_tracker.hpp"
#include "perivox/periodicity.hpp"
#include "perivox/pitch_tracker.hpp"
#include "perivox/snr_map.hpp"
#include "test_util.hpp"

using namespace perivox;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail,
            double seconds) {
  std::printf("criterion %d: %s — %s [%.2f s]\n", criterion,
              pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- 1

void criterion_1() {
  Timer timer;
  const RunConfig cfg;
  GammatoneAnalyzer analyzer(design_filterbank(FilterbankSpec{}));
  FrameAssembler assembler(cfg.num_filters,
                           FrameGeometry{cfg.frame_len, cfg.hop});

  const int len = 4096;
  const int t0 = 512;
  std::vector<Matrix<double>> unit_frames;
  std::vector<std::complex<double>> col(cfg.num_filters);
  for (int n = 0; n < len; ++n) {
    analyzer.process_sample(n == t0 ? 1.0 : 0.0, col.data());
    if (auto frame = assembler.push_column(col.data())) {
      unit_frames.push_back(std::move(frame->real_units));
    }
  }
  Matrix<double> gains(unit_frames.size(), cfg.num_filters);
  for (std::size_t j = 0; j < gains.rows(); ++j) {
    for (std::size_t k = 0; k < gains.cols(); ++k) gains.at(j, k) = 1.0;
  }
  const auto y =
      resynthesize(unit_frames, gains, FrameGeometry{cfg.frame_len, cfg.hop});

  int peak_at = 0;
  double peak = -1.0;
  for (std::size_t n = 0; n < y.size(); ++n) {
    if (std::abs(y[n]) > peak) {
      peak = std::abs(y[n]);
      peak_at = static_cast<int>(n);
    }
  }
  const bool peak_ok = std::abs(peak_at - (t0 + 128)) <= 1;

  // System impulse response and its spectrum over the analysis band.
  const std::vector<double> h(y.begin() + t0, y.begin() + t0 + 2560);
  double worst_dev = 0.0;
  double lo_db = 1e9;
  double hi_db = -1e9;
  for (double f = 100.0; f <= 3200.0; f += 2.0) {
    const double mag = testutil::dtft_mag(h, f, cfg.sample_rate);
    const double db = 20.0 * std::log10(mag);
    worst_dev = std::max(worst_dev, std::abs(db));
    lo_db = std::min(lo_db, db);
    hi_db = std::max(hi_db, db);
  }
  const bool flat_ok = worst_dev < 1.0;

  report(1, peak_ok && flat_ok,
         fmt("impulse peak at %d (want %d±1), max |deviation| %.3f dB over "
             "[100, 3200] Hz (span %.3f dB)",
             peak_at, t0 + 128, worst_dev, hi_db - lo_db),
         timer.seconds());
}

// ---------------------------------------------------------------- 2

void criterion_2() {
  Timer timer;
  const auto bank = design_filterbank(FilterbankSpec{});
  int worst = 0;
  bool ok = true;
  for (const auto& f : bank) {
    const auto h = impulse_response(f, 4096);
    int arg = 0;
    double best = -1.0;
    for (std::size_t n = 0; n < h.size(); ++n) {
      if (std::abs(h[n]) > best) {
        best = std::abs(h[n]);
        arg = static_cast<int>(n);
      }
    }
    const int dev = std::abs(arg - f.d - f.n_pe);
    worst = std::max(worst, dev);
    if (dev > 1) ok = false;
  }
  report(2, ok,
         fmt("envelope-peak positions match the design across %zu subbands, "
             "worst deviation %d samples",
             bank.size(), worst),
         timer.seconds());
}

// ---------------------------------------------------------------- 3

void criterion_3() {
  Timer timer;
  double worst = 0.0;
  for (double ls = -2.0; ls <= 4.0 + 1e-12; ls += 0.004) {
    const double s = std::pow(10.0, ls);
    worst = std::max(worst, std::abs(snr_of_pd(pd_of_snr(s)) - s));
  }
  report(3, worst <= 1e-9,
         fmt("SNR→PD→SNR round trip worst error %.3e over [1e-2, 1e4]", worst),
         timer.seconds());
}

// ---------------------------------------------------------------- 4

void criterion_4() {
  Timer timer;
  const RunConfig cfg;
  const auto lo = compute_thresholds(std::vector<double>(8, 1.0), cfg);
  const auto hi = compute_thresholds(std::vector<double>(8, 1000.0), cfg);
  // Published endpoints at the precision they are stated: 0.37, 0.11 and
  // 0.23 carry two decimals (±0.01); 1.3 carries one (±0.05).  The exact
  // high end is pd(0.9) = 1.3263, i.e. 1.2 dB, printed below in full.
  const bool ok = std::abs(lo.pdthd1 - 0.37) <= 0.01 &&
                  std::abs(lo.pdthd2 - 0.11) <= 0.01 &&
                  std::abs(hi.pdthd1 - 1.3) <= 0.05 &&
                  std::abs(hi.pdthd2 - 0.23) <= 0.01;
  report(4, ok,
         fmt("thresholds (%.4f, %.4f) at 0 dB and (%.4f, %.4f) at 30 dB "
             "vs published (0.37, 0.11) and (1.3, 0.23)",
             lo.pdthd1, lo.pdthd2, hi.pdthd1, hi.pdthd2),
         timer.seconds());
}

// ---------------------------------------------------------------- 5

void criterion_5() {
  Timer timer;
  const int trials = 1200;
  std::vector<double> noise_cfr;
  std::vector<double> mix_cfr;
  std::vector<double> mix_nac;
  noise_cfr.reserve(trials);
  mix_cfr.reserve(trials);
  mix_nac.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    const auto d = white_noise(256, 20000 + t);
    noise_cfr.push_back(comb_filter_ratio(d.data(), 256, 40));

    auto s = testutil::sine(256, 200.0, 8000.0, 1.0, 0.0137 * t);
    const auto d2 = white_noise(256, 30000 + t);
    const double scale =
        std::sqrt(testutil::energy(s) / testutil::energy(d2));
    std::vector<double> u(256);
    for (int n = 0; n < 256; ++n) u[n] = s[n] + scale * d2[n];
    mix_cfr.push_back(comb_filter_ratio(u.data(), 256, 40));
    mix_nac.push_back(normalized_autocorr(u.data(), 256, 40));
  }
  const double m_noise = testutil::median(noise_cfr);
  const double m_cfr = testutil::median(mix_cfr);
  const double m_nac = testutil::median(mix_nac);
  const bool ok = m_noise >= 0.8 && m_noise <= 1.25 && m_cfr >= 2.4 &&
                  m_cfr <= 3.6 && m_nac >= 0.4 && m_nac <= 0.6;
  report(5, ok,
         fmt("medians over %d frames: noise CFR %.3f (want 0.8..1.25), "
             "0 dB CFR %.3f (want 3±20%%), 0 dB NAC %.3f (want 0.5±0.1)",
             trials, m_noise, m_cfr, m_nac),
         timer.seconds());
}

// ---------------------------------------------------------------- 6

struct TrackedRun {
  PitchTrack detected;
  long frames = 0;
};

TrackedRun track_stream(const std::vector<double>& x, const RunConfig& cfg) {
  Enhancer enh(cfg);
  TrackedRun run;
  run.detected.hop_seconds = cfg.hop / cfg.sample_rate;
  enh.set_decision_observer([&run](const FrameDecision& d) {
    run.detected.f0.push_back(d.periodic ? d.f0 : 0.0);
  });
  std::vector<double> out;
  enh.process(x, out);
  enh.finish(out);
  run.frames = enh.stats().frames;
  return run;
}

std::vector<double> pitch_trajectory(double f_start, double f_end) {
  // 31 noise-only frames, then two long voiced stretches split by a gap.
  const int lead = 31;
  const int seg = 80;
  const int gap = 8;
  const int total = lead + seg + gap + seg;
  std::vector<double> traj(total, 0.0);
  const int voiced_total = 2 * seg;
  int v = 0;
  for (int j = 0; j < total; ++j) {
    const bool voiced =
        (j >= lead && j < lead + seg) || (j >= lead + seg + gap);
    if (!voiced) continue;
    const double t = voiced_total == 1
                         ? 0.0
                         : static_cast<double>(v) / (voiced_total - 1);
    traj[j] = f_start + (f_end - f_start) * t;
    ++v;
  }
  return traj;
}

void criterion_6() {
  Timer timer;
  const RunConfig cfg;
  const std::vector<std::pair<double, double>> cases = {
      {100.0, 100.0}, {200.0, 200.0}, {300.0, 300.0},
      {100.0, 300.0}, {300.0, 100.0}};

  double rates[2] = {0.0, 0.0};
  const double snrs[2] = {10.0, 0.0};
  for (int si = 0; si < 2; ++si) {
    long errors = 0;
    long frames = 0;
    int seed = 500 + si;
    for (const auto& [f_start, f_end] : cases) {
      const auto traj = pitch_trajectory(f_start, f_end);
      const auto clean = synth_harmonic(traj, cfg.hop, cfg.sample_rate);
      const auto noise = white_noise(clean.size(), seed++);
      const auto x = mix_at_snr(clean, noise, snrs[si]);
      const auto run = track_stream(x, cfg);

      PitchTrack ref;
      ref.hop_seconds = run.detected.hop_seconds;
      ref.f0 = traj;
      const auto r = p0_error_rate(run.detected, ref);
      errors += r.misses + r.false_alarms + r.deviations;
      frames += r.total_frames;
    }
    rates[si] = 100.0 * static_cast<double>(errors) / frames;
  }
  const bool ok = rates[0] < 10.0 && rates[1] < 25.0;
  report(6, ok,
         fmt("P0 error rate %.2f%% at 10 dB (want < 10%%), %.2f%% at 0 dB "
             "(want < 25%%) over constants and glides",
             rates[0], rates[1]),
         timer.seconds());
}

// ---------------------------------------------------------------- 7

void criterion_7() {
  Timer timer;
  NoiseTracker nt(RunConfig{}, 1);
  for (int j = 0; j < 20; ++j) {
    nt.step_aperiodic({1.0});
    nt.commit({0.178}, {1.0});
  }
  bool closed_form_ok = true;
  int within = -1;
  for (int j = 1; j <= 15; ++j) {
    const auto r = nt.step_aperiodic({4.0});
    nt.commit({0.178}, {4.0});
    const double expected = 4.0 - 3.0 * std::pow(0.9, j);
    if (std::abs(r.e_d[0] - expected) > 1e-12) closed_form_ok = false;
    if (within < 0 && 10.0 * std::log10(4.0 / r.e_d[0]) <= 3.0) within = j;
  }
  const bool ok = closed_form_ok && within >= 1 && within <= 15;
  report(7, ok,
         fmt("×4 noise step tracked to within 3 dB in %d frames "
             "(closed-form recursion %s)",
             within, closed_form_ok ? "matches" : "MISMATCH"),
         timer.seconds());
}

// ---------------------------------------------------------------- 8

std::vector<double> vowel_sequence_traj(const std::vector<double>& f0s) {
  std::vector<double> traj(31, 0.0);
  for (double f : f0s) {
    traj.insert(traj.end(), 60, f);
    traj.insert(traj.end(), 8, 0.0);
  }
  return traj;
}

struct Formant {
  double freq, bw, gain;
};

double formant_env(double f, const std::vector<Formant>& fmts) {
  double acc = 0.02;
  for (const auto& fo : fmts) {
    const double hb = 0.5 * fo.bw;
    acc += fo.gain * hb * hb / ((f - fo.freq) * (f - fo.freq) + hb * hb);
  }
  return acc;
}

// Formant-shaped harmonic vowels: glottal 1/h source tilt, resonant spectral
// envelope, band limited to 3.4 kHz (telephone band, inside the filterbank's
// coverage), quasi-random harmonic phases, 10 ms fades at block edges.
std::vector<double> synth_vowels(const std::vector<double>& traj, int hop,
                                 double fs,
                                 const std::vector<std::vector<Formant>>& vws) {
  std::vector<double> out(traj.size() * static_cast<std::size_t>(hop), 0.0);
  std::size_t j = 0;
  int block = 0;
  while (j < traj.size()) {
    if (traj[j] <= 0) {
      ++j;
      continue;
    }
    std::size_t e = j;
    while (e < traj.size() && traj[e] == traj[j]) ++e;
    const double f0 = traj[j];
    const auto& fmts = vws[block % vws.size()];
    ++block;
    const int harmonics = static_cast<int>(3400.0 / f0);
    const std::size_t n0 = j * hop;
    const std::size_t n1 = e * hop;
    const std::size_t fade = 80;
    for (std::size_t n = n0; n < n1; ++n) {
      double s = 0.0;
      const double t = static_cast<double>(n - n0) / fs;
      for (int h = 1; h <= harmonics; ++h) {
        const double fh = h * f0;
        s += formant_env(fh, fmts) / h *
             std::sin(2.0 * M_PI * fh * t + 0.7 * h * h);
      }
      double w = 1.0;
      if (n - n0 < fade) w = 0.5 - 0.5 * std::cos(M_PI * (n - n0) / fade);
      if (n1 - n <= fade) {
        w = std::min(w, 0.5 - 0.5 * std::cos(M_PI * (n1 - n) / fade));
      }
      out[n] = s * w;
    }
    j = e;
  }
  double pk = 0.0;
  for (double v : out) pk = std::max(pk, std::abs(v));
  if (pk > 0) {
    for (double& v : out) v /= pk;
  }
  return out;
}

const std::vector<std::vector<Formant>> kVowelSetA = {
    {{730, 90, 1.0}, {1090, 110, 0.7}, {2440, 170, 0.3}},   // ah
    {{270, 60, 1.0}, {2290, 200, 0.5}, {3010, 240, 0.3}},   // ee
    {{300, 65, 1.0}, {870, 90, 0.6}, {2240, 190, 0.25}}};   // oo
const std::vector<std::vector<Formant>> kVowelSetB = {
    {{530, 70, 1.0}, {1840, 150, 0.55}, {2480, 200, 0.3}},  // eh
    {{570, 80, 1.0}, {840, 90, 0.65}, {2410, 190, 0.3}},    // aw
    {{730, 90, 1.0}, {1090, 110, 0.7}, {2440, 170, 0.3}}};  // ah

void criterion_8() {
  Timer timer;
  const std::vector<std::vector<double>> sequences = {
      {150.0, 180.0, 120.0}, {200.0, 250.0, 220.0}};
  double sum_in = 0.0;
  double sum_comb = 0.0;
  double sum_plain = 0.0;
  int seed = 900;
  for (const auto& seq : sequences) {
    const auto traj = vowel_sequence_traj(seq);
    const auto clean =
        synth_vowels(traj, 128, 8000.0, seed == 900 ? kVowelSetA : kVowelSetB);
    const auto noise = white_noise(clean.size(), seed++);
    const auto x = mix_at_snr(clean, noise, 0.0);
    sum_in += overall_snr_db(clean, x);

    RunConfig with_comb;
    Enhancer ec(with_comb);
    std::vector<double> yc;
    ec.process(x, yc);
    ec.finish(yc);
    sum_comb += overall_snr_delayed_db(clean, yc, with_comb.group_delay);

    RunConfig no_comb;
    no_comb.set("comb", "off");
    Enhancer ep(no_comb);
    std::vector<double> yp;
    ep.process(x, yp);
    ep.finish(yp);
    sum_plain += overall_snr_delayed_db(clean, yp, no_comb.group_delay);
  }
  const double n = static_cast<double>(sequences.size());
  const double in_db = sum_in / n;
  const double comb_db = sum_comb / n;
  const double plain_db = sum_plain / n;
  const bool ok = comb_db >= in_db + 3.0 && comb_db >= plain_db;
  report(8, ok,
         fmt("overall SNR %.2f dB in, %.2f dB enhanced with comb, %.2f dB "
             "without (want ≥ %.2f and comb ≥ plain)",
             in_db, comb_db, plain_db, in_db + 3.0),
         timer.seconds());
}

// ---------------------------------------------------------------- 9

struct Decisions {
  std::vector<char> periodic;
  std::vector<int> p0;
  std::vector<double> max_peak;
};

Decisions run_with_log(Enhancer& enh, const std::vector<double>& x,
                       std::vector<double>& out, bool flush) {
  Decisions log;
  enh.set_decision_observer([&log](const FrameDecision& d) {
    log.periodic.push_back(d.periodic ? 1 : 0);
    log.p0.push_back(d.p0);
    log.max_peak.push_back(d.max_peak);
  });
  enh.process(x, out);
  if (flush) enh.finish(out);
  return log;
}

void criterion_9() {
  Timer timer;
  std::vector<double> traj(31, 0.0);
  traj.insert(traj.end(), 60, 180.0);
  const auto clean = synth_harmonic(traj, 128, 8000.0);
  const auto noise = white_noise(clean.size(), 1234);
  const auto prefix = mix_at_snr(clean, noise, 5.0);

  // Prefix causality: frames emitted before any future sample arrives are
  // bit-identical whatever comes next.
  std::size_t j0;
  {
    Enhancer enh{RunConfig{}};
    std::vector<double> sink;
    const auto log = run_with_log(enh, prefix, sink, false);
    j0 = log.periodic.size();
  }
  auto future_a = prefix;
  const auto tone = testutil::sine(6000, 250.0, 8000.0, 0.5);
  future_a.insert(future_a.end(), tone.begin(), tone.end());
  auto future_b = prefix;
  future_b.insert(future_b.end(), 6000, 0.0);
  bool causal_ok;
  {
    Enhancer ea{RunConfig{}};
    Enhancer eb{RunConfig{}};
    std::vector<double> oa, ob;
    const auto la = run_with_log(ea, future_a, oa, true);
    const auto lb = run_with_log(eb, future_b, ob, true);
    causal_ok = la.periodic.size() >= j0 && lb.periodic.size() >= j0;
    for (std::size_t j = 0; causal_ok && j < j0; ++j) {
      causal_ok = la.periodic[j] == lb.periodic[j] && la.p0[j] == lb.p0[j] &&
                  la.max_peak[j] == lb.max_peak[j];
    }
  }

  // Scale invariance of decisions under a power-of-two input gain.
  bool scale_ok;
  {
    auto scaled = prefix;
    for (auto& v : scaled) v *= 4.0;
    Enhancer e1{RunConfig{}};
    Enhancer e4{RunConfig{}};
    std::vector<double> o1, o4;
    const auto l1 = run_with_log(e1, prefix, o1, true);
    const auto l4 = run_with_log(e4, scaled, o4, true);
    scale_ok = l1.periodic.size() == l4.periodic.size();
    for (std::size_t j = 0; scale_ok && j < l1.periodic.size(); ++j) {
      scale_ok = l1.periodic[j] == l4.periodic[j] && l1.p0[j] == l4.p0[j];
    }
  }

  // Determinism: two runs produce byte-identical output.
  bool deterministic;
  {
    Enhancer e1{RunConfig{}};
    Enhancer e2{RunConfig{}};
    std::vector<double> o1, o2;
    e1.process(prefix, o1);
    e1.finish(o1);
    e2.process(prefix, o2);
    e2.finish(o2);
    deterministic = o1 == o2;
  }

  // Constant memory: the state footprint is identical after 1 s and 30 s.
  bool memory_ok;
  {
    Enhancer e_short{RunConfig{}};
    std::vector<double> sink;
    e_short.process(prefix, sink);
    const std::size_t bytes_short = e_short.state_bytes();
    Enhancer e_long{RunConfig{}};
    std::vector<double> sink2;
    for (int rep = 0; rep < 30; ++rep) {
      sink2.clear();
      e_long.process(prefix, sink2);
    }
    memory_ok = e_long.state_bytes() == bytes_short;
  }

  const bool ok = causal_ok && scale_ok && deterministic && memory_ok;
  report(9, ok,
         fmt("prefix causality %s, scale invariance %s, determinism %s, "
             "constant memory %s",
             causal_ok ? "ok" : "FAIL", scale_ok ? "ok" : "FAIL",
             deterministic ? "ok" : "FAIL", memory_ok ? "ok" : "FAIL"),
         timer.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
