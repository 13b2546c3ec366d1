#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "avsa/intensity.hpp"
#include "avsa/mel.hpp"

namespace avsa {

// Inter-channel level difference 2 log(|l| + eps) - 2 log(|r| + eps).
inline std::vector<double> icld(const ComplexSpectrogram& spec) {
  if (spec.channels != 2)
    throw std::invalid_argument("ICLD requires a 2-channel (L, R) spectrogram");
  std::vector<double> out(spec.frames * static_cast<std::size_t>(spec.bins));
  std::size_t i = 0;
  for (std::size_t t = 0; t < spec.frames; ++t)
    for (int f = 0; f < spec.bins; ++f, ++i)
      out[i] = 2.0 * std::log(std::abs(spec.at(0, t, f)) + kLogEps) -
               2.0 * std::log(std::abs(spec.at(1, t, f)) + kLogEps);
  return out;
}

// Inter-channel phase difference as (cos, sin) of angle(l) - angle(r),
// computed from l * conj(r) so the pair sits on the unit circle; bins where
// either magnitude is below 1e-12 yield (1, 0).
inline std::vector<std::array<double, 2>> ipd(const ComplexSpectrogram& spec) {
  if (spec.channels != 2)
    throw std::invalid_argument("IPD requires a 2-channel (L, R) spectrogram");
  constexpr double mag_floor_sq = 1e-24;  // |.| < 1e-12
  std::vector<std::array<double, 2>> out(spec.frames * static_cast<std::size_t>(spec.bins),
                                         {1.0, 0.0});
  std::size_t i = 0;
  for (std::size_t t = 0; t < spec.frames; ++t)
    for (int f = 0; f < spec.bins; ++f, ++i) {
      const auto l = spec.at(0, t, f);
      const auto r = spec.at(1, t, f);
      if (std::norm(l) < mag_floor_sq || std::norm(r) < mag_floor_sq) continue;
      const double re = l.real() * r.real() + l.imag() * r.imag();
      const double im = l.imag() * r.real() - l.real() * r.imag();
      const double mag = std::sqrt(re * re + im * im);
      if (mag == 0.0) continue;
      double c = re / mag, s = im / mag;
      c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
      s = s > 1.0 ? 1.0 : (s < -1.0 ? -1.0 : s);
      out[i] = {c, s};
    }
  return out;
}

namespace detail {

// Energy-weighted mel aggregation of a per-bin scalar field; weights are
// the filterbank-weighted per-bin total stereo energy. Empty bands take
// the supplied neutral value.
inline void aggregate_weighted(const std::vector<double>& values,
                               const std::vector<double>& energy,
                               const MelFilterbank& fb, std::size_t frames,
                               double neutral, FeatureTensor& out, int channel) {
  for (std::size_t t = 0; t < frames; ++t) {
    for (int m = 0; m < fb.n_mels; ++m) {
      double num = 0.0, den = 0.0;
      for (int f = 0; f < fb.bins; ++f) {
        const double w = fb.weight(m, f);
        if (w == 0.0) continue;
        const std::size_t i = t * static_cast<std::size_t>(fb.bins) + f;
        num += w * energy[i] * values[i];
        den += w * energy[i];
      }
      out.at(channel, t, m) = den < kEnergyFloor ? neutral : num / den;
    }
  }
}

}  // namespace detail

// 5-channel stereo feature stack: log-mel L, R, then mel-aggregated ICLD,
// IPD-cos, IPD-sin.
inline FeatureTensor stereo_features(const StereoSignal& y, const StftConfig& cfg,
                                     const MelFilterbank& fb) {
  const ComplexSpectrogram spec = stft(y, cfg);
  const FeatureTensor mel = log_mel(spec, fb);
  const std::vector<double> level = icld(spec);
  const std::vector<std::array<double, 2>> phase = ipd(spec);

  const std::size_t n_bins = spec.frames * static_cast<std::size_t>(spec.bins);
  std::vector<double> energy(n_bins), pcos(n_bins), psin(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    const std::size_t t = i / static_cast<std::size_t>(spec.bins);
    const int f = static_cast<int>(i % static_cast<std::size_t>(spec.bins));
    energy[i] = std::norm(spec.at(0, t, f)) + std::norm(spec.at(1, t, f));
    pcos[i] = phase[i][0];
    psin[i] = phase[i][1];
  }

  FeatureTensor out(5, spec.frames, fb.n_mels);
  out.semantics = {"log-mel:L", "log-mel:R", "icld", "ipd-cos", "ipd-sin"};
  const std::size_t plane = spec.frames * static_cast<std::size_t>(fb.n_mels);
  std::copy(mel.data.begin(), mel.data.end(), out.data.begin());
  detail::aggregate_weighted(level, energy, fb, spec.frames, 0.0, out, 2);
  detail::aggregate_weighted(pcos, energy, fb, spec.frames, 1.0, out, 3);
  detail::aggregate_weighted(psin, energy, fb, spec.frames, 0.0, out, 4);

  // Aggregated IPD stays within the per-bin bounds.
  for (std::size_t i = 3 * plane; i < 5 * plane; ++i) {
    if (out.data[i] > 1.0) out.data[i] = 1.0;
    if (out.data[i] < -1.0) out.data[i] = -1.0;
  }
  return out;
}

}  // namespace avsa
