#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "avsa/rng.hpp"
#include "avsa/stft.hpp"

namespace test_helpers {

inline std::vector<double> make_noise(std::size_t n, std::uint64_t seed, double amp = 1.0) {
  avsa::SeededRng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = amp * rng.gaussian();
  return v;
}

inline std::vector<double> make_sine(std::size_t n, double freq_hz, int sample_rate,
                                     double amp = 1.0, double phase = 0.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = amp * std::sin(2.0 * avsa::kPi * freq_hz * static_cast<double>(i) / sample_rate + phase);
  return v;
}

// Independent STFT oracle: frame extraction, Hann windowing and DFT written
// directly from the definitions, no shared code with avsa::stft.
inline std::vector<std::complex<double>> oracle_frame_dft(const std::vector<double>& signal,
                                                          const avsa::StftConfig& cfg,
                                                          std::size_t frame) {
  const std::size_t pad_left =
      static_cast<std::size_t>((cfg.window_length - cfg.hop_length + 1) / 2);
  std::vector<double> buf(static_cast<std::size_t>(cfg.fft_size), 0.0);
  for (int i = 0; i < cfg.window_length; ++i) {
    const long long src = static_cast<long long>(frame) * cfg.hop_length + i -
                          static_cast<long long>(pad_left);
    if (src < 0 || src >= static_cast<long long>(signal.size())) continue;
    const double w = 0.5 - 0.5 * std::cos(2.0 * avsa::kPi * i / cfg.window_length);
    buf[static_cast<std::size_t>(i)] = signal[static_cast<std::size_t>(src)] * w;
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(cfg.fft_size / 2 + 1));
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
      const double ang = -2.0 * avsa::kPi * static_cast<double>(k) * static_cast<double>(i) /
                         cfg.fft_size;
      acc += buf[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Unique scratch directory per test binary run.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("avsa_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace test_helpers
