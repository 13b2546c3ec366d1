#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsa/stft.hpp"

namespace avsa {

inline constexpr double kLogEps = 1e-10;

// Slaney mel scale: linear below 1 kHz, logarithmic above.
inline double hz_to_mel(double hz) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  if (hz < min_log_hz) return hz / f_sp;
  const double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

inline double mel_to_hz(double mel) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  const double min_log_mel = min_log_hz / f_sp;
  if (mel < min_log_mel) return mel * f_sp;
  const double logstep = std::log(6.4) / 27.0;
  return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

// Triangular mel filterbank, f_min = 0, f_max = Nyquist, area-normalized
// rows (2 / bandwidth). Construction rejects empty rows.
struct MelFilterbank {
  int n_mels = 0;
  int bins = 0;
  int fft_size = 0;
  int sample_rate = 0;
  std::vector<double> weights;  // n_mels x bins, row-major

  double weight(int m, int f) const {
    return weights[static_cast<std::size_t>(m) * bins + f];
  }

  double row_sum(int m) const {
    double s = 0.0;
    for (int f = 0; f < bins; ++f) s += weight(m, f);
    return s;
  }
};

inline MelFilterbank make_mel_filterbank(int n_mels, int fft_size, int sample_rate) {
  if (n_mels <= 0 || fft_size <= 0 || sample_rate <= 0)
    throw std::invalid_argument("mel filterbank parameters must be positive");
  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.bins = fft_size / 2 + 1;
  fb.fft_size = fft_size;
  fb.sample_rate = sample_rate;
  fb.weights.assign(static_cast<std::size_t>(n_mels) * fb.bins, 0.0);

  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges[static_cast<std::size_t>(i)] = mel_to_hz(mel_max * i / (n_mels + 1));

  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges[static_cast<std::size_t>(m)];
    const double mid = edges[static_cast<std::size_t>(m) + 1];
    const double hi = edges[static_cast<std::size_t>(m) + 2];
    const double scale = 2.0 / (hi - lo);
    bool any = false;
    for (int f = 0; f < fb.bins; ++f) {
      const double hz = static_cast<double>(f) * sample_rate / fft_size;
      double w = 0.0;
      if (hz > lo && hz < mid)
        w = (hz - lo) / (mid - lo);
      else if (hz >= mid && hz < hi)
        w = (hi - hz) / (hi - mid);
      if (w > 0.0) {
        fb.weights[static_cast<std::size_t>(m) * fb.bins + f] = w * scale;
        any = true;
      }
    }
    if (!any)
      throw std::invalid_argument("mel band " + std::to_string(m) +
                                  " covers no FFT bin; reduce n_mels or raise fft_size");
  }
  return fb;
}

// channels x frames x n_mels tensor with per-channel semantic tags.
struct FeatureTensor {
  int channels = 0;
  std::size_t frames = 0;
  int bands = 0;
  std::vector<std::string> semantics;  // one tag per channel
  std::vector<double> data;            // [channel][frame][band] row-major

  FeatureTensor() = default;
  FeatureTensor(int c, std::size_t t, int b)
      : channels(c), frames(t), bands(b),
        data(static_cast<std::size_t>(c) * t * b, 0.0) {}

  double& at(int c, std::size_t t, int b) {
    return data[(static_cast<std::size_t>(c) * frames + t) * bands + b];
  }
  double at(int c, std::size_t t, int b) const {
    return data[(static_cast<std::size_t>(c) * frames + t) * bands + b];
  }
};

// log(fb . |spec|^2 + eps), natural log, per channel.
inline FeatureTensor log_mel(const ComplexSpectrogram& spec, const MelFilterbank& fb) {
  if (fb.bins != spec.bins)
    throw std::invalid_argument("filterbank bin count does not match spectrogram");
  FeatureTensor out(spec.channels, spec.frames, fb.n_mels);
  for (int c = 0; c < spec.channels; ++c) {
    out.semantics.push_back("log-mel");
    for (std::size_t t = 0; t < spec.frames; ++t) {
      for (int m = 0; m < fb.n_mels; ++m) {
        double acc = 0.0;
        for (int f = 0; f < fb.bins; ++f) {
          const double w = fb.weight(m, f);
          if (w != 0.0) acc += w * std::norm(spec.at(c, t, f));
        }
        out.at(c, t, m) = std::log(acc + kLogEps);
      }
    }
  }
  return out;
}

}  // namespace avsa
