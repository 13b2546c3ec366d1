#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "avsa/mel.hpp"
#include "avsa/stft.hpp"

namespace avsa {

inline constexpr double kEnergyFloor = 1e-12;

// Per-bin numerator 2 Re(w* [x, y, z]) and total channel energy
// |w|^2 + |x|^2 + |y|^2 + |z|^2 of the active intensity vector.
struct IntensityField {
  std::size_t frames = 0;
  int bins = 0;
  std::vector<std::array<double, 3>> numerator;  // [frame][bin] -> (x, y, z)
  std::vector<double> energy;                    // [frame][bin]

  std::size_t idx(std::size_t t, int f) const {
    return t * static_cast<std::size_t>(bins) + static_cast<std::size_t>(f);
  }
};

inline IntensityField intensity_components(const ComplexSpectrogram& spec) {
  if (spec.channels != 4)
    throw std::invalid_argument("active intensity requires a 4-channel WYZX spectrogram");
  IntensityField out;
  out.frames = spec.frames;
  out.bins = spec.bins;
  out.numerator.resize(spec.frames * static_cast<std::size_t>(spec.bins));
  out.energy.resize(spec.frames * static_cast<std::size_t>(spec.bins));
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (int f = 0; f < spec.bins; ++f) {
      const auto w = spec.at(kW, t, f);
      const auto y = spec.at(kY, t, f);
      const auto z = spec.at(kZ, t, f);
      const auto x = spec.at(kX, t, f);
      const std::size_t i = out.idx(t, f);
      out.numerator[i] = {2.0 * (w.real() * x.real() + w.imag() * x.imag()),
                          2.0 * (w.real() * y.real() + w.imag() * y.imag()),
                          2.0 * (w.real() * z.real() + w.imag() * z.imag())};
      out.energy[i] = std::norm(w) + std::norm(x) + std::norm(y) + std::norm(z);
    }
  }
  return out;
}

// Normalized active intensity vector per bin (Cartesian x, y, z), bounded
// in [-1, 1]; bins below the energy floor yield the zero vector.
inline std::vector<std::array<double, 3>> active_intensity(const ComplexSpectrogram& spec) {
  const IntensityField field = intensity_components(spec);
  std::vector<std::array<double, 3>> out(field.numerator.size(), {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = field.energy[i];
    if (d < kEnergyFloor) continue;
    out[i] = {field.numerator[i][0] / d, field.numerator[i][1] / d, field.numerator[i][2] / d};
  }
  return out;
}

// Mel aggregation as ratio-of-sums: (fb . numerator) / (fb . energy) per
// band, which keeps |i| <= 1 by construction. Output channels: x, y, z.
inline FeatureTensor aggregate_intensity_mel(const IntensityField& field,
                                             const MelFilterbank& fb) {
  if (fb.bins != field.bins)
    throw std::invalid_argument("filterbank bin count does not match intensity field");
  FeatureTensor out(3, field.frames, fb.n_mels);
  out.semantics = {"intensity-x", "intensity-y", "intensity-z"};
  for (std::size_t t = 0; t < field.frames; ++t) {
    for (int m = 0; m < fb.n_mels; ++m) {
      double num[3] = {0.0, 0.0, 0.0};
      double den = 0.0;
      for (int f = 0; f < fb.bins; ++f) {
        const double w = fb.weight(m, f);
        if (w == 0.0) continue;
        const std::size_t i = field.idx(t, f);
        num[0] += w * field.numerator[i][0];
        num[1] += w * field.numerator[i][1];
        num[2] += w * field.numerator[i][2];
        den += w * field.energy[i];
      }
      if (den < kEnergyFloor) continue;  // stays zero
      out.at(0, t, m) = num[0] / den;
      out.at(1, t, m) = num[1] / den;
      out.at(2, t, m) = num[2] / den;
    }
  }
  return out;
}

// 7-channel FOA feature stack: log-mel W, Y, Z, X then intensity x, y, z.
inline FeatureTensor foa_features(const FoaSignal& x, const StftConfig& cfg,
                                  const MelFilterbank& fb) {
  const ComplexSpectrogram spec = stft(x, cfg);
  const FeatureTensor mel = log_mel(spec, fb);
  const FeatureTensor intensity = aggregate_intensity_mel(intensity_components(spec), fb);

  FeatureTensor out(7, spec.frames, fb.n_mels);
  out.semantics = {"log-mel:W", "log-mel:Y", "log-mel:Z", "log-mel:X",
                   "intensity-x", "intensity-y", "intensity-z"};
  const std::size_t plane = spec.frames * static_cast<std::size_t>(fb.n_mels);
  std::copy(mel.data.begin(), mel.data.end(), out.data.begin());
  std::copy(intensity.data.begin(), intensity.data.end(), out.data.begin() + 4 * plane);
  return out;
}

}  // namespace avsa
