// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_CONFIG_HPP
#define PERIVOX_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace perivox {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Every tunable of the engine with the published defaults.  A config file is
// flat "key = value" text; '#' starts a comment.  CLI overrides use the same
// keys.  Overridden keys are remembered so reports can echo them.
struct RunConfig {
  // Filterbank.
  double sample_rate = 8000.0;
  double fc1 = 80.0;          // lowest center frequency, Hz
  double erb_step = 0.5;      // CF spacing in ERB units
  int num_filters = 47;
  int group_delay = 128;      // desired envelope peak position, samples
  double cf_split = 1500.0;   // fine-structure vs envelope boundary, Hz

  // Frame geometry.
  int frame_len = 256;
  int hop = 128;

  // Candidate F0 range, Hz (defines the period grid in samples).
  double f0_min = 70.0;
  double f0_max = 420.0;

  // Stationary-noise tracker for the initial SNR estimate.
  double alpha_onset = 0.96;  // smoothing constant
  double delta_onset = 1.4;   // onset hold threshold (energy ratio)

  // Noise and speech energy recursions.
  double beta_noise = 0.9;        // aperiodic-frame noise smoothing
  double beta_noise_fast = 0.8;   // fast re-estimation when speech is weak
  double beta_speech = 0.96;      // speech energy smoothing
  double beta_speech_fast = 0.8;  // speech smoothing in weak-speech units
  double beta_voiced = 0.9;       // noise smoothing in voiced frames

  // Gain floor (-15 dB) and spectro-temporal smoothing thresholds.
  double g_min = 0.178;
  double smooth_prev = 0.1;      // previous-frame gain below this ...
  double smooth_adjacent = 0.3;  // ... and both neighbors below this ...
  double smooth_current = 0.6;   // ... pull gains below this to g_min

  // Periodicity-threshold schedule: thd = clamp(base + slope*(x - 10), lo, hi)
  // where x is the frame SNR in dB clamped to [0, 30].
  double snr1_base = 0.6;
  double snr1_slope = 0.03;
  double snr1_min = 0.3;
  double snr1_max = 0.9;
  double snr2_base = 0.2;
  double snr2_slope = 0.01;
  double snr2_min = 0.1;
  double snr2_max = 0.2;

  // Pitch continuity.
  int memory_depth = 50;          // qualifying peaks kept for the running median
  double memory_deviation = 0.4;  // relative deviation treated as "same talker"

  bool comb_enabled = true;

  // Set "key = value"; throws ConfigError for unknown keys or unparsable
  // values.  The key is recorded as overridden.
  void set(const std::string& key, const std::string& value);

  // Sanity-checks cross-field constraints; throws ConfigError.
  void validate() const;

  // Keys changed from defaults, with the raw values they were set to.
  const std::map<std::string, std::string>& overrides() const {
    return overrides_;
  }

 private:
  std::map<std::string, std::string> overrides_;
};

// Reads a flat key=value file into cfg; throws ConfigError on bad syntax and
// propagates set() errors with line information.
void load_config_file(const std::string& path, RunConfig& cfg);

// Parses a single "key=value" override string (as given on the CLI).
void apply_override(const std::string& assignment, RunConfig& cfg);

}  // namespace perivox

#endif  // PERIVOX_CONFIG_HPP
