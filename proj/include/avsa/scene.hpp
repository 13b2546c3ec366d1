#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "avsa/foa.hpp"
#include "avsa/rng.hpp"

namespace avsa {

// Discretized sound scene: point plane-wave sources plus an isotropic
// diffuse field realized as uncorrelated noise plane waves on a fixed
// Fibonacci sphere lattice.
struct SceneSpec {
  int sample_rate = 24000;
  std::size_t num_samples = 0;  // required when there are no sources
  std::vector<std::pair<Direction, std::vector<double>>> sources;
  double diffuse_gain = 0.0;
  int diffuse_component_count = 64;
  std::uint64_t seed = 0;
};

// Deterministic near-uniform sphere covering (midpoint Fibonacci lattice).
inline std::vector<Direction> fibonacci_sphere(int count) {
  if (count <= 0) throw std::invalid_argument("lattice size must be positive");
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double az = Direction::wrap_azimuth(2.0 * kPi * k / golden);
    dirs.emplace_back(az, std::asin(z));
  }
  return dirs;
}

inline FoaSignal synthesize_scene(const SceneSpec& spec) {
  if (spec.sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
  if (spec.diffuse_gain < 0.0) throw std::invalid_argument("diffuse gain must be >= 0");

  std::size_t n = spec.num_samples;
  for (const auto& [dir, sig] : spec.sources) {
    (void)dir;
    if (sig.empty()) throw std::invalid_argument("scene source with empty signal");
    if (n == 0) n = sig.size();
    if (sig.size() != n) throw std::invalid_argument("scene sources differ in length");
  }
  if (n == 0) throw std::invalid_argument("scene has no sources and no length");

  FoaSignal out(spec.sample_rate, n);

  for (const auto& [dir, sig] : spec.sources) {
    const FoaGainVector g = encode_direction(dir);
    for (std::size_t i = 0; i < n; ++i) {
      out.ch[kW][i] += sig[i];
      out.ch[kY][i] += g.y * sig[i];
      out.ch[kZ][i] += g.z * sig[i];
      out.ch[kX][i] += g.x * sig[i];
    }
  }

  if (spec.diffuse_gain > 0.0) {
    if (spec.diffuse_component_count <= 0)
      throw std::invalid_argument("diffuse component count must be positive");
    const int count = spec.diffuse_component_count;
    const auto lattice = fibonacci_sphere(count);
    const double scale = spec.diffuse_gain / std::sqrt(static_cast<double>(count));
    for (int k = 0; k < count; ++k) {
      // Independent stream per component, so the field is reproducible
      // regardless of how many components precede it.
      SeededRng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(k)));
      const FoaGainVector g = encode_direction(lattice[static_cast<std::size_t>(k)]);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = scale * rng.gaussian();
        out.ch[kW][i] += s;
        out.ch[kY][i] += g.y * s;
        out.ch[kZ][i] += g.z * s;
        out.ch[kX][i] += g.x * s;
      }
    }
  }

  return out;
}

}  // namespace avsa
