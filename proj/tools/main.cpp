// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "perivox/config.hpp"
#include "perivox/enhancer.hpp"
#include "perivox/evalkit.hpp"
#include "perivox/resample.hpp"
#include "perivox/wav.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "flat key=value configuration file");
  cmd->add_option("--set", opts.overrides,
                  "override one configuration key (key=value, repeatable)");
}

perivox::RunConfig build_config(const CommonOpts& opts) {
  perivox::RunConfig cfg;
  if (!opts.config_path.empty()) {
    perivox::load_config_file(opts.config_path, cfg);
  }
  for (const std::string& s : opts.overrides) {
    perivox::apply_override(s, cfg);
  }
  cfg.validate();
  return cfg;
}

std::vector<double> load_audio(const std::string& path, double target_rate) {
  const perivox::WavData wav = perivox::read_wav(path);
  if (wav.samples.empty()) {
    throw perivox::IoError("'" + path + "' contains no samples");
  }
  return perivox::resample_sinc(wav.samples, wav.sample_rate, target_rate);
}

// Streams audio through the engine in fixed chunks; returns the enhanced
// signal (input length + group delay samples).
std::vector<double> run_engine(perivox::Enhancer& engine,
                               const std::vector<double>& in) {
  std::vector<double> out;
  out.reserve(in.size() + 1024);
  constexpr std::size_t kChunk = 4096;
  for (std::size_t pos = 0; pos < in.size(); pos += kChunk) {
    const std::size_t n = std::min(kChunk, in.size() - pos);
    engine.process(std::span<const double>(in.data() + pos, n), out);
  }
  engine.finish(out);
  return out;
}

int cmd_enhance(const CommonOpts& opts, const std::string& in_path,
                const std::string& out_path, bool no_comb, bool write_float) {
  perivox::RunConfig cfg = build_config(opts);
  if (no_comb) cfg.set("comb", "0");

  const std::vector<double> audio = load_audio(in_path, cfg.sample_rate);
  perivox::Enhancer engine(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> enhanced = run_engine(engine, audio);
  const auto t1 = std::chrono::steady_clock::now();

  if (write_float) {
    perivox::write_wav_float32(out_path, enhanced, cfg.sample_rate);
  } else {
    const perivox::WriteResult res =
        perivox::write_wav_pcm16(out_path, enhanced, cfg.sample_rate);
    if (res.clipped) {
      std::cerr << "warning: output exceeded full scale (peak " << res.peak
                << "); peak-normalized\n";
    }
  }

  const auto& st = engine.stats();
  const double wall = std::chrono::duration<double>(t1 - t0).count();
  const double audio_sec = audio.size() / cfg.sample_rate;
  std::printf("frames processed: %ld\n", st.frames);
  std::printf("periodic frames: %ld (%.1f%%)\n", st.periodic_frames,
              st.frames ? 100.0 * st.periodic_frames / st.frames : 0.0);
  std::printf("realtime factor: %.1fx\n", wall > 0 ? audio_sec / wall : 0.0);
  return kExitOk;
}

int cmd_pitch(const CommonOpts& opts, const std::string& in_path,
              const std::string& out_path) {
  const perivox::RunConfig cfg = build_config(opts);
  const std::vector<double> audio = load_audio(in_path, cfg.sample_rate);

  perivox::Enhancer engine(cfg);
  perivox::PitchTrack track;
  track.hop_seconds = cfg.hop / cfg.sample_rate;
  engine.set_decision_observer([&](const perivox::FrameDecision& d) {
    track.f0.push_back(d.periodic ? d.f0 : 0.0);
  });
  run_engine(engine, audio);

  perivox::write_pitch_tsv(out_path, track);
  return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& clean_path,
             const std::string& processed_path, const std::string& noisy_path,
             const std::string& detected_path,
             const std::string& reference_path, const std::string& out_path) {
  const perivox::RunConfig cfg = build_config(opts);
  const bool have_wav = !clean_path.empty() && !processed_path.empty();
  const bool have_tsv = !detected_path.empty() && !reference_path.empty();
  if (!have_wav && !have_tsv) {
    std::cerr << "eval: need --clean/--processed wavs or "
                 "--detected/--reference tracks\n";
    return kExitUsage;
  }

  nlohmann::ordered_json record;
  record["file"] = have_wav ? processed_path : detected_path;

  if (have_wav) {
    const std::vector<double> clean = load_audio(clean_path, cfg.sample_rate);
    const std::vector<double> processed =
        load_audio(processed_path, cfg.sample_rate);
    if (!noisy_path.empty()) {
      const std::vector<double> noisy = load_audio(noisy_path, cfg.sample_rate);
      record["ovl_snr_in_db"] =
          perivox::overall_snr_delayed_db(clean, noisy, 0, cfg.frame_len);
    } else {
      record["ovl_snr_in_db"] = nullptr;
    }
    record["ovl_snr_out_db"] = perivox::overall_snr_delayed_db(
        clean, processed, cfg.group_delay, cfg.frame_len);
  }

  if (have_tsv) {
    const perivox::PitchTrack detected = perivox::read_pitch_tsv(detected_path);
    const perivox::PitchTrack reference =
        perivox::read_pitch_tsv(reference_path);
    const perivox::ErrorRateReport rep = p0_error_rate(detected, reference);
    if (rep.trimmed) {
      std::cerr << "warning: pitch tracks differ in length; trimmed to "
                << rep.total_frames << " frames\n";
    }
    record["p0_error_rate_pct"] = rep.rate_pct();
    record["misses"] = rep.misses;
    record["false_alarms"] = rep.false_alarms;
    record["deviations"] = rep.deviations;
  }

  record["pesq"] = nullptr;
  record["pesq_note"] =
      "PESQ is an ITU-licensed metric and is not computed; overall SNR and "
      "the property suite stand in for it";
  nlohmann::ordered_json ov = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.overrides()) ov[k] = v;
  record["config_overrides"] = ov;

  const std::string line = record.dump();
  if (out_path.empty()) {
    std::cout << line << "\n";
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw perivox::IoError("cannot open '" + out_path + "'");
    out << line << "\n";
  }
  return kExitOk;
}

int cmd_design(const CommonOpts& opts) {
  const perivox::RunConfig cfg = build_config(opts);
  perivox::FilterbankSpec spec;
  spec.sample_rate = cfg.sample_rate;
  spec.fc1 = cfg.fc1;
  spec.erb_step = cfg.erb_step;
  spec.num_filters = cfg.num_filters;
  spec.group_delay = cfg.group_delay;
  const std::vector<perivox::FilterCoeffs> bank =
      perivox::design_filterbank(spec);
  std::printf("# k\tcf_hz\terb_hz\tn_pe\tdelay\tgain_b\tpole_re\tpole_im\n");
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& c = bank[k];
    std::printf("%zu\t%.4f\t%.4f\t%d\t%d\t%.9e\t%.9f\t%.9f\n", k + 1, c.cf,
                c.erb, c.n_pe, c.d, c.b, c.a.real(), c.a.imag());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming periodicity-driven speech enhancement"};
  app.require_subcommand(1);

  CommonOpts enhance_opts, pitch_opts, eval_opts, design_opts;
  std::string in_path, out_path;
  bool no_comb = false, write_float = false;

  CLI::App* enhance =
      app.add_subcommand("enhance", "denoise a WAV file");
  enhance->add_option("input", in_path, "input WAV (mono PCM16/float32)")
      ->required();
  enhance->add_option("output", out_path, "output WAV")->required();
  enhance->add_flag("--no-comb", no_comb, "disable comb reinforcement");
  enhance->add_flag("--float", write_float, "write 32-bit float samples");
  add_common(enhance, enhance_opts);

  std::string pitch_in, pitch_out;
  CLI::App* pitch =
      app.add_subcommand("pitch", "extract a pitch track to TSV");
  pitch->add_option("input", pitch_in, "input WAV")->required();
  pitch->add_option("output", pitch_out, "output TSV")->required();
  add_common(pitch, pitch_opts);

  std::string clean_path, processed_path, noisy_path, detected_path,
      reference_path, eval_out;
  CLI::App* eval = app.add_subcommand("eval", "score enhancement or pitch");
  eval->add_option("--clean", clean_path, "clean reference WAV");
  eval->add_option("--processed", processed_path, "enhanced WAV to score");
  eval->add_option("--noisy", noisy_path, "unprocessed noisy WAV (input SNR)");
  eval->add_option("--detected", detected_path, "detected pitch TSV");
  eval->add_option("--reference", reference_path, "reference pitch TSV");
  eval->add_option("--out", eval_out, "write the JSON record here");
  add_common(eval, eval_opts);

  CLI::App* design =
      app.add_subcommand("design", "print the filterbank coefficient table");
  add_common(design, design_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (enhance->parsed()) {
      return cmd_enhance(enhance_opts, in_path, out_path, no_comb, write_float);
    }
    if (pitch->parsed()) return cmd_pitch(pitch_opts, pitch_in, pitch_out);
    if (eval->parsed()) {
      return cmd_eval(eval_opts, clean_path, processed_path, noisy_path,
                      detected_path, reference_path, eval_out);
    }
    if (design->parsed()) return cmd_design(design_opts);
  } catch (const perivox::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const perivox::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
