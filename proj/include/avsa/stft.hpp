#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "avsa/direction.hpp"
#include "avsa/foa.hpp"

namespace avsa {

// Defaults reproduce a 21 ms window / 10 ms hop at 24 kHz, yielding exactly
// 100 frames per second of audio.
struct StftConfig {
  int window_length = 504;
  int hop_length = 240;
  int fft_size = 512;

  void validate() const {
    if (hop_length <= 0 || window_length <= 0 || fft_size <= 0)
      throw std::invalid_argument("STFT sizes must be positive");
    if (hop_length > window_length || window_length > fft_size)
      throw std::invalid_argument("STFT requires hop <= window <= fft size");
  }

  int bins() const { return fft_size / 2 + 1; }

  // Closed form for the frame count: floor(len / hop), len >= hop.
  std::size_t num_frames(std::size_t len) const {
    return len / static_cast<std::size_t>(hop_length);
  }
};

struct ComplexSpectrogram {
  int channels = 0;
  std::size_t frames = 0;
  int bins = 0;
  int sample_rate = 0;
  StftConfig config;
  std::vector<std::complex<double>> data;  // [channel][frame][bin] row-major

  std::complex<double>& at(int c, std::size_t t, int f) {
    return data[(static_cast<std::size_t>(c) * frames + t) * bins + f];
  }
  const std::complex<double>& at(int c, std::size_t t, int f) const {
    return data[(static_cast<std::size_t>(c) * frames + t) * bins + f];
  }

  double bin_frequency(int f) const {
    return static_cast<double>(f) * sample_rate / config.fft_size;
  }
};

namespace detail {

// Iterative radix-2 FFT; falls back to a naive DFT for non-power-of-two
// sizes (only tiny sizes occur in practice).
inline void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n < 2) return;
  if ((n & (n - 1)) != 0) {
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ang = -2.0 * kPi * static_cast<double>(k * i % n) / static_cast<double>(n);
        s += a[i] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      out[k] = s;
    }
    a = std::move(out);
    return;
  }

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline std::vector<double> hann_window(int length) {
  std::vector<double> w(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i)
    w[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / length);
  return w;
}

}  // namespace detail

// Center-padded STFT. Frame t covers padded samples [t*hop, t*hop + window)
// with pad_left = ceil((window - hop) / 2) leading zeros, so a 24000-sample
// input at the default config yields exactly 100 frames.
inline ComplexSpectrogram stft(const std::vector<std::span<const double>>& channels,
                               const StftConfig& cfg, int sample_rate) {
  cfg.validate();
  if (channels.empty()) throw std::invalid_argument("stft: no channels");
  const std::size_t len = channels[0].size();
  for (const auto& c : channels)
    if (c.size() != len) throw std::invalid_argument("stft: channel length mismatch");
  if (len < static_cast<std::size_t>(cfg.hop_length))
    throw std::invalid_argument("stft: signal shorter than one hop");

  const std::size_t frames = cfg.num_frames(len);
  const int bins = cfg.bins();
  const std::size_t pad_left =
      static_cast<std::size_t>((cfg.window_length - cfg.hop_length + 1) / 2);
  const auto window = detail::hann_window(cfg.window_length);

  ComplexSpectrogram spec;
  spec.channels = static_cast<int>(channels.size());
  spec.frames = frames;
  spec.bins = bins;
  spec.sample_rate = sample_rate;
  spec.config = cfg;
  spec.data.assign(static_cast<std::size_t>(spec.channels) * frames * bins, {0.0, 0.0});

  std::vector<std::complex<double>> buf(static_cast<std::size_t>(cfg.fft_size));
  for (int c = 0; c < spec.channels; ++c) {
    const auto& sig = channels[static_cast<std::size_t>(c)];
    for (std::size_t t = 0; t < frames; ++t) {
      std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
      const std::size_t start = t * static_cast<std::size_t>(cfg.hop_length);
      for (int i = 0; i < cfg.window_length; ++i) {
        const std::size_t padded_idx = start + static_cast<std::size_t>(i);
        if (padded_idx < pad_left) continue;
        const std::size_t src = padded_idx - pad_left;
        if (src >= len) continue;
        buf[static_cast<std::size_t>(i)] = sig[src] * window[static_cast<std::size_t>(i)];
      }
      detail::fft_inplace(buf);
      for (int f = 0; f < bins; ++f) spec.at(c, t, f) = buf[static_cast<std::size_t>(f)];
    }
  }
  return spec;
}

inline ComplexSpectrogram stft(const FoaSignal& x, const StftConfig& cfg) {
  x.validate();
  std::vector<std::span<const double>> chans;
  for (const auto& c : x.ch) chans.emplace_back(c);
  return stft(chans, cfg, x.sample_rate);
}

inline ComplexSpectrogram stft(const StereoSignal& x, const StftConfig& cfg) {
  if (x.left.size() != x.right.size())
    throw std::invalid_argument("stereo channels must have equal length");
  return stft({std::span<const double>(x.left), std::span<const double>(x.right)}, cfg,
              x.sample_rate);
}

inline ComplexSpectrogram stft(const std::vector<double>& mono, const StftConfig& cfg,
                               int sample_rate) {
  return stft({std::span<const double>(mono)}, cfg, sample_rate);
}

}  // namespace avsa
