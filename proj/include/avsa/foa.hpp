#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "avsa/direction.hpp"

namespace avsa {

// Channel indices, ACN order (ambiX): W, Y, Z, X.
enum FoaChannel : int { kW = 0, kY = 1, kZ = 2, kX = 3 };

// First-order directional response u(theta, phi) = [1, sin t cos p, sin p, cos t cos p],
// SN3D normalized. The (y, z, x) entries are the Cartesian unit DOA vector.
struct FoaGainVector {
  double w = 1.0;
  double y = 0.0;
  double z = 0.0;
  double x = 0.0;

  double operator[](int c) const {
    switch (c) {
      case kW: return w;
      case kY: return y;
      case kZ: return z;
      default: return x;
    }
  }
};

inline FoaGainVector encode_direction(const Direction& d) {
  const Vec3 u = d.unit_vector();
  return {1.0, u.y, u.z, u.x};
}

// 4-channel time-domain FOA buffer, ACN/SN3D (W, Y, Z, X).
struct FoaSignal {
  int sample_rate = 0;
  std::array<std::vector<double>, 4> ch;

  FoaSignal() = default;
  FoaSignal(int rate, std::size_t num_samples) : sample_rate(rate) {
    if (rate <= 0) throw std::invalid_argument("sample rate must be positive");
    for (auto& c : ch) c.assign(num_samples, 0.0);
  }

  std::size_t size() const { return ch[0].size(); }

  void validate() const {
    if (sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
    for (int c = 1; c < 4; ++c)
      if (ch[c].size() != ch[0].size())
        throw std::invalid_argument("FOA channels must have equal length");
  }
};

struct StereoSignal {
  int sample_rate = 0;
  std::vector<double> left;
  std::vector<double> right;

  std::size_t size() const { return left.size(); }
};

// x(n) = u(theta, phi) s(n). The W channel is a verbatim copy of the input.
inline FoaSignal encode_source(const std::vector<double>& signal, const Direction& d,
                               int sample_rate) {
  if (signal.empty()) throw std::invalid_argument("encode_source: empty signal");
  const FoaGainVector g = encode_direction(d);
  FoaSignal out(sample_rate, signal.size());
  out.ch[kW] = signal;
  for (std::size_t n = 0; n < signal.size(); ++n) {
    out.ch[kY][n] = g.y * signal[n];
    out.ch[kZ][n] = g.z * signal[n];
    out.ch[kX][n] = g.x * signal[n];
  }
  return out;
}

// y(n) = u^T(theta0, phi0) x(n).
inline std::vector<double> beamform(const FoaSignal& x, const Direction& d) {
  x.validate();
  const FoaGainVector g = encode_direction(d);
  std::vector<double> y(x.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    y[n] = x.ch[kW][n] + g.y * x.ch[kY][n] + g.z * x.ch[kZ][n] + g.x * x.ch[kX][n];
  }
  return y;
}

}  // namespace avsa
