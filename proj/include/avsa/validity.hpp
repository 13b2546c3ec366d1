#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsa/stft.hpp"

namespace avsa {

// Ambisonic-format energy-ratio test: |E_xyz / E_w - 1| <= tau on signals
// band-limited below the cutoff.
struct ValidityConfig {
  double tau = 0.1;
  double cutoff_hz = 4000.0;
  StftConfig stft;

  void validate(int sample_rate) const {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must be in (0, 1)");
    if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
      throw std::invalid_argument("cutoff must be in (0, Nyquist)");
  }
};

struct ValidityResult {
  double energy_ratio = 0.0;
  bool passed = false;
  double e_w = 0.0;
  double e_xyz = 0.0;
};

// The low-pass is realized in the frequency domain: energies sum |STFT|^2
// over bins whose center frequency lies strictly below the cutoff.
inline ValidityResult validity_test(const FoaSignal& x, const ValidityConfig& cfg = {}) {
  x.validate();
  cfg.validate(x.sample_rate);
  if (x.size() == 0) throw std::invalid_argument("validity_test: empty signal");

  const ComplexSpectrogram spec = stft(x, cfg.stft);
  ValidityResult res;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (int f = 0; f < spec.bins; ++f) {
      if (spec.bin_frequency(f) >= cfg.cutoff_hz) break;
      res.e_w += std::norm(spec.at(kW, t, f));
      res.e_xyz += std::norm(spec.at(kY, t, f)) + std::norm(spec.at(kZ, t, f)) +
                   std::norm(spec.at(kX, t, f));
    }
  }

  if (res.e_w < 1e-12) {
    res.energy_ratio = std::numeric_limits<double>::infinity();
    res.passed = false;
    return res;
  }
  res.energy_ratio = res.e_xyz / res.e_w;
  res.passed = std::abs(res.energy_ratio - 1.0) <= cfg.tau;
  return res;
}

struct FileValidity {
  std::string path;
  bool readable = false;
  std::string error;  // set when not readable
  ValidityResult result;
};

struct CorpusReport {
  ValidityConfig config;
  std::vector<FileValidity> files;  // deterministic (input) order
  std::size_t total = 0;            // denominator of pass_fraction
  std::size_t passes = 0;
  std::size_t errors = 0;
  double pass_fraction = 0.0;
};

}  // namespace avsa
