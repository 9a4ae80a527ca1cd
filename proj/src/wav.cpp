// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#include "perivox/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace perivox {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::vector<std::uint8_t> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_all(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

std::string wav_header(std::uint16_t format, std::uint16_t bits,
                       std::uint32_t rate, std::uint32_t data_bytes) {
  std::string s;
  s.reserve(44);
  s += "RIFF";
  put_u32(s, 36 + data_bytes);
  s += "WAVE";
  s += "fmt ";
  put_u32(s, 16);
  put_u16(s, format);
  put_u16(s, 1);  // mono
  put_u32(s, rate);
  put_u32(s, rate * (bits / 8));
  put_u16(s, bits / 8);
  put_u16(s, bits);
  s += "data";
  put_u32(s, data_bytes);
  return s;
}

}  // namespace

WavData read_wav(const std::string& path) {
  const std::vector<std::uint8_t> b = read_all(path);
  if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 ||
      std::memcmp(b.data() + 8, "WAVE", 4) != 0) {
    throw IoError("'" + path + "' is not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const char* id = reinterpret_cast<const char*>(b.data() + pos);
    const std::uint32_t len = get_u32(b.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > b.size()) throw IoError("'" + path + "': truncated chunk");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw IoError("'" + path + "': malformed fmt chunk");
      format = get_u16(b.data() + body);
      channels = get_u16(b.data() + body + 2);
      rate = get_u32(b.data() + body + 4);
      bits = get_u16(b.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_off == 0) {
    throw IoError("'" + path + "': missing fmt or data chunk");
  }
  if (channels != 1) {
    throw IoError("'" + path + "': multichannel input not supported (" +
                  std::to_string(channels) + " channels)");
  }
  if (rate == 0) throw IoError("'" + path + "': zero sample rate");

  WavData wav;
  wav.sample_rate = rate;
  if (format == kFormatPcm && bits == 16) {
    const std::size_t n = data_len / 2;
    wav.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int16_t v =
          static_cast<std::int16_t>(get_u16(b.data() + data_off + 2 * i));
      wav.samples[i] = v / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const std::size_t n = data_len / 4;
    wav.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t u = get_u32(b.data() + data_off + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      wav.samples[i] = f;
    }
  } else {
    throw IoError("'" + path + "': unsupported sample format (want PCM16 or " +
                  "float32, got format " + std::to_string(format) + ", " +
                  std::to_string(bits) + " bits)");
  }
  return wav;
}

WriteResult write_wav_pcm16(const std::string& path,
                            std::span<const double> samples,
                            double sample_rate) {
  WriteResult res;
  for (double x : samples) res.peak = std::max(res.peak, std::abs(x));
  double scale = 1.0;
  if (res.peak > 1.0) {
    res.clipped = true;
    scale = 1.0 / res.peak;
  }
  std::string s = wav_header(kFormatPcm, 16,
                             static_cast<std::uint32_t>(std::lround(sample_rate)),
                             static_cast<std::uint32_t>(samples.size() * 2));
  s.reserve(s.size() + samples.size() * 2);
  for (double x : samples) {
    // Same 1/32768 step as the reader, so a round trip stays within half an
    // LSB everywhere except full scale, which clamps to 32767.
    const double v = x * scale * 32768.0;
    const long q = std::lrint(std::min(32767.0, std::max(-32768.0, v)));
    put_u16(s, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  write_all(path, s);
  return res;
}

void write_wav_float32(const std::string& path,
                       std::span<const double> samples, double sample_rate) {
  std::string s = wav_header(kFormatFloat, 32,
                             static_cast<std::uint32_t>(std::lround(sample_rate)),
                             static_cast<std::uint32_t>(samples.size() * 4));
  s.reserve(s.size() + samples.size() * 4);
  for (double x : samples) {
    const float f = static_cast<float>(x);
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    put_u32(s, u);
  }
  write_all(path, s);
}

}  // namespace perivox
