// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace perivox {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  double v = parse_double(key, value);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("config: '" + key + "' must be an integer: " + value);
  }
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw ConfigError("config: '" + key + "' must be a boolean: " + value);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  using Setter = std::function<void(RunConfig&, const std::string&)>;
  static const std::map<std::string, Setter> table = {
      {"sample_rate", [](RunConfig& c, const std::string& v) { c.sample_rate = parse_double("sample_rate", v); }},
      {"fc1", [](RunConfig& c, const std::string& v) { c.fc1 = parse_double("fc1", v); }},
      {"erb_step", [](RunConfig& c, const std::string& v) { c.erb_step = parse_double("erb_step", v); }},
      {"num_filters", [](RunConfig& c, const std::string& v) { c.num_filters = parse_int("num_filters", v); }},
      {"group_delay", [](RunConfig& c, const std::string& v) { c.group_delay = parse_int("group_delay", v); }},
      {"cf_split", [](RunConfig& c, const std::string& v) { c.cf_split = parse_double("cf_split", v); }},
      {"frame_len", [](RunConfig& c, const std::string& v) { c.frame_len = parse_int("frame_len", v); }},
      {"hop", [](RunConfig& c, const std::string& v) { c.hop = parse_int("hop", v); }},
      {"f0_min", [](RunConfig& c, const std::string& v) { c.f0_min = parse_double("f0_min", v); }},
      {"f0_max", [](RunConfig& c, const std::string& v) { c.f0_max = parse_double("f0_max", v); }},
      {"alpha_onset", [](RunConfig& c, const std::string& v) { c.alpha_onset = parse_double("alpha_onset", v); }},
      {"delta_onset", [](RunConfig& c, const std::string& v) { c.delta_onset = parse_double("delta_onset", v); }},
      {"beta_noise", [](RunConfig& c, const std::string& v) { c.beta_noise = parse_double("beta_noise", v); }},
      {"beta_noise_fast", [](RunConfig& c, const std::string& v) { c.beta_noise_fast = parse_double("beta_noise_fast", v); }},
      {"beta_speech", [](RunConfig& c, const std::string& v) { c.beta_speech = parse_double("beta_speech", v); }},
      {"beta_speech_fast", [](RunConfig& c, const std::string& v) { c.beta_speech_fast = parse_double("beta_speech_fast", v); }},
      {"beta_voiced", [](RunConfig& c, const std::string& v) { c.beta_voiced = parse_double("beta_voiced", v); }},
      {"g_min", [](RunConfig& c, const std::string& v) { c.g_min = parse_double("g_min", v); }},
      {"smooth_prev", [](RunConfig& c, const std::string& v) { c.smooth_prev = parse_double("smooth_prev", v); }},
      {"smooth_adjacent", [](RunConfig& c, const std::string& v) { c.smooth_adjacent = parse_double("smooth_adjacent", v); }},
      {"smooth_current", [](RunConfig& c, const std::string& v) { c.smooth_current = parse_double("smooth_current", v); }},
      {"snr1_base", [](RunConfig& c, const std::string& v) { c.snr1_base = parse_double("snr1_base", v); }},
      {"snr1_slope", [](RunConfig& c, const std::string& v) { c.snr1_slope = parse_double("snr1_slope", v); }},
      {"snr1_min", [](RunConfig& c, const std::string& v) { c.snr1_min = parse_double("snr1_min", v); }},
      {"snr1_max", [](RunConfig& c, const std::string& v) { c.snr1_max = parse_double("snr1_max", v); }},
      {"snr2_base", [](RunConfig& c, const std::string& v) { c.snr2_base = parse_double("snr2_base", v); }},
      {"snr2_slope", [](RunConfig& c, const std::string& v) { c.snr2_slope = parse_double("snr2_slope", v); }},
      {"snr2_min", [](RunConfig& c, const std::string& v) { c.snr2_min = parse_double("snr2_min", v); }},
      {"snr2_max", [](RunConfig& c, const std::string& v) { c.snr2_max = parse_double("snr2_max", v); }},
      {"memory_depth", [](RunConfig& c, const std::string& v) { c.memory_depth = parse_int("memory_depth", v); }},
      {"memory_deviation", [](RunConfig& c, const std::string& v) { c.memory_deviation = parse_double("memory_deviation", v); }},
      {"comb", [](RunConfig& c, const std::string& v) { c.comb_enabled = parse_bool("comb", v); }},
  };
  auto it = table.find(key);
  if (it == table.end()) {
    throw ConfigError("config: unknown key '" + key + "'");
  }
  it->second(*this, value);
  overrides_[key] = value;
}

void RunConfig::validate() const {
  if (sample_rate <= 0) throw ConfigError("config: sample_rate must be positive");
  if (fc1 <= 0) throw ConfigError("config: fc1 must be positive");
  if (erb_step <= 0) throw ConfigError("config: erb_step must be positive");
  if (num_filters < 1) throw ConfigError("config: num_filters must be >= 1");
  if (group_delay < 0) throw ConfigError("config: group_delay must be >= 0");
  if (frame_len <= 0 || hop <= 0) throw ConfigError("config: frame_len and hop must be positive");
  if (frame_len != 2 * hop) throw ConfigError("config: frame_len must equal 2*hop");
  if (f0_min <= 0 || f0_max <= f0_min) throw ConfigError("config: need 0 < f0_min < f0_max");
  if (sample_rate / f0_max < 2) throw ConfigError("config: f0_max too high for sample_rate");
  if (sample_rate / f0_min >= frame_len) {
    throw ConfigError("config: f0_min period does not fit in a frame");
  }
  if (g_min <= 0 || g_min > 1) throw ConfigError("config: g_min must be in (0, 1]");
  if (memory_depth < 1) throw ConfigError("config: memory_depth must be >= 1");
  for (double b : {alpha_onset, beta_noise, beta_noise_fast, beta_speech,
                   beta_speech_fast, beta_voiced}) {
    if (b <= 0 || b >= 1) throw ConfigError("config: smoothing constants must be in (0, 1)");
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s = trim(line);
    if (s.empty()) continue;
    std::string::size_type eq = s.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config: " << path << ":" << lineno << ": expected key = value";
      throw ConfigError(msg.str());
    }
    try {
      cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    } catch (const ConfigError& e) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": " << e.what();
      throw ConfigError(msg.str());
    }
  }
}

void apply_override(const std::string& assignment, RunConfig& cfg) {
  std::string::size_type eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must be key=value: " + assignment);
  }
  cfg.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace perivox
