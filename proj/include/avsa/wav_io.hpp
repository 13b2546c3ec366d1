#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsa/foa.hpp"

namespace avsa {

enum class WavSampleFormat { pcm16, float32, float64 };

struct WavData {
  int sample_rate = 0;
  std::vector<std::vector<double>> channels;

  std::size_t num_samples() const { return channels.empty() ? 0 : channels[0].size(); }
};

namespace detail {

inline void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace detail

// Little-endian RIFF/WAVE writer: PCM16 (format 1) or IEEE float 32/64
// (format 3), channels interleaved.
inline void write_wav(const std::string& path, const std::vector<std::vector<double>>& channels,
                      int sample_rate, WavSampleFormat fmt = WavSampleFormat::float32) {
  if (channels.empty()) throw std::invalid_argument("write_wav: no channels");
  const std::size_t n = channels[0].size();
  for (const auto& c : channels)
    if (c.size() != n) throw std::invalid_argument("write_wav: channel length mismatch");
  if (sample_rate <= 0) throw std::invalid_argument("write_wav: bad sample rate");

  const int num_ch = static_cast<int>(channels.size());
  const int bytes_per =
      fmt == WavSampleFormat::pcm16 ? 2 : (fmt == WavSampleFormat::float32 ? 4 : 8);
  const std::uint16_t format_tag = fmt == WavSampleFormat::pcm16 ? 1 : 3;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(n * static_cast<std::size_t>(num_ch) * bytes_per);

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  detail::put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  detail::put_u32(out, 16);
  detail::put_u16(out, format_tag);
  detail::put_u16(out, static_cast<std::uint16_t>(num_ch));
  detail::put_u32(out, static_cast<std::uint32_t>(sample_rate));
  detail::put_u32(out, static_cast<std::uint32_t>(sample_rate * num_ch * bytes_per));
  detail::put_u16(out, static_cast<std::uint16_t>(num_ch * bytes_per));
  detail::put_u16(out, static_cast<std::uint16_t>(8 * bytes_per));
  out += "data";
  detail::put_u32(out, data_bytes);

  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < num_ch; ++c) {
      const double v = channels[static_cast<std::size_t>(c)][i];
      if (fmt == WavSampleFormat::pcm16) {
        double scaled = v * 32768.0;
        if (scaled > 32767.0) scaled = 32767.0;
        if (scaled < -32768.0) scaled = -32768.0;
        const auto q = static_cast<std::int16_t>(std::lrint(scaled));
        detail::put_u16(out, static_cast<std::uint16_t>(q));
      } else if (fmt == WavSampleFormat::float32) {
        const float f = static_cast<float>(v);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        detail::put_u32(out, bits);
      } else {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        detail::put_u32(out, static_cast<std::uint32_t>(bits & 0xFFFFFFFFULL));
        detail::put_u32(out, static_cast<std::uint32_t>(bits >> 32));
      }
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_wav: cannot open " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write_wav: write failed for " + path);
}

inline WavData read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_wav: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error("read_wav: not a RIFF/WAVE file: " + path);

  std::uint16_t format_tag = 0, num_ch = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = detail::get_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) break;
    if (std::memcmp(id, "fmt ", 4) == 0 && len >= 16) {
      format_tag = detail::get_u16(bytes.data() + body);
      num_ch = detail::get_u16(bytes.data() + body + 2);
      sample_rate = detail::get_u32(bytes.data() + body + 4);
      bits = detail::get_u16(bytes.data() + body + 14);
      if (format_tag == 0xFFFE && len >= 40)  // WAVE_FORMAT_EXTENSIBLE
        format_tag = detail::get_u16(bytes.data() + body + 24);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (num_ch == 0 || sample_rate == 0) throw std::runtime_error("read_wav: missing fmt chunk");
  if (data == nullptr) throw std::runtime_error("read_wav: missing data chunk");

  const bool pcm16 = format_tag == 1 && bits == 16;
  const bool f32 = format_tag == 3 && bits == 32;
  const bool f64 = format_tag == 3 && bits == 64;
  if (!pcm16 && !f32 && !f64)
    throw std::runtime_error("read_wav: unsupported format (tag " + std::to_string(format_tag) +
                             ", " + std::to_string(bits) + " bits) in " + path);

  const std::size_t bytes_per = bits / 8;
  const std::size_t frame_bytes = bytes_per * num_ch;
  const std::size_t n = data_len / frame_bytes;

  WavData out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.channels.assign(num_ch, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < num_ch; ++c) {
      const unsigned char* p = data + i * frame_bytes + static_cast<std::size_t>(c) * bytes_per;
      double v;
      if (pcm16) {
        const auto q = static_cast<std::int16_t>(detail::get_u16(p));
        v = q / 32768.0;
      } else if (f32) {
        std::uint32_t b = detail::get_u32(p);
        float fv;
        std::memcpy(&fv, &b, 4);
        v = fv;
      } else {
        const std::uint64_t b = static_cast<std::uint64_t>(detail::get_u32(p)) |
                                (static_cast<std::uint64_t>(detail::get_u32(p + 4)) << 32);
        std::memcpy(&v, &b, 8);
      }
      out.channels[static_cast<std::size_t>(c)][i] = v;
    }
  }
  return out;
}

// Channel remap table: output channel i takes input channel remap[i].
inline std::vector<std::vector<double>> apply_remap(const std::vector<std::vector<double>>& in,
                                                    const std::vector<int>& remap) {
  std::vector<std::vector<double>> out;
  out.reserve(remap.size());
  for (int src : remap) {
    if (src < 0 || static_cast<std::size_t>(src) >= in.size())
      throw std::invalid_argument("remap index out of range");
    out.push_back(in[static_cast<std::size_t>(src)]);
  }
  return out;
}

inline FoaSignal foa_from_wav(const WavData& wav, const std::vector<int>* remap = nullptr) {
  std::vector<std::vector<double>> chans =
      remap != nullptr ? apply_remap(wav.channels, *remap) : wav.channels;
  if (chans.size() != 4)
    throw std::runtime_error("expected a 4-channel (WYZX) file, got " +
                             std::to_string(chans.size()) + " channels; use a remap table");
  FoaSignal x;
  x.sample_rate = wav.sample_rate;
  for (int c = 0; c < 4; ++c) x.ch[static_cast<std::size_t>(c)] = std::move(chans[static_cast<std::size_t>(c)]);
  x.validate();
  return x;
}

inline void write_wav(const std::string& path, const FoaSignal& x,
                      WavSampleFormat fmt = WavSampleFormat::float32) {
  write_wav(path, {x.ch[0], x.ch[1], x.ch[2], x.ch[3]}, x.sample_rate, fmt);
}

inline void write_wav(const std::string& path, const StereoSignal& x,
                      WavSampleFormat fmt = WavSampleFormat::float32) {
  write_wav(path, {x.left, x.right}, x.sample_rate, fmt);
}

}  // namespace avsa
