#include <catch2/catch_amalgamated.hpp>

#include "avsa/stft.hpp"
#include "helpers.hpp"

using namespace avsa;
using test_helpers::make_noise;
using test_helpers::make_sine;
using test_helpers::oracle_frame_dft;

TEST_CASE("default config: 1 s at 24 kHz yields exactly 100 frames x 257 bins") {
  const auto sig = make_noise(24000, 1);
  const ComplexSpectrogram spec = stft(sig, StftConfig{}, 24000);
  CHECK(spec.frames == 100);
  CHECK(spec.bins == 257);
  CHECK(spec.channels == 1);
}

TEST_CASE("frame count follows the closed form floor(len / hop)", "[property]") {
  SeededRng rng(7);
  const StftConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len = 240 + static_cast<std::size_t>(rng.uniform() * 30000.0);
    const auto sig = make_noise(len, 600 + trial);
    CHECK(stft(sig, cfg, 24000).frames == len / 240);
  }
}

TEST_CASE("all-zero input produces an all-zero spectrogram") {
  const std::vector<double> sig(4800, 0.0);
  const ComplexSpectrogram spec = stft(sig, StftConfig{}, 24000);
  for (const auto& v : spec.data) CHECK(v == std::complex<double>(0.0, 0.0));
}

TEST_CASE("stft matches an independent naive DFT oracle") {
  const auto sig = make_noise(2400, 13);
  const StftConfig cfg;
  const ComplexSpectrogram spec = stft(sig, cfg, 24000);
  for (std::size_t t : {std::size_t{0}, std::size_t{4}, spec.frames - 1}) {
    const auto expected = oracle_frame_dft(sig, cfg, t);
    for (int f = 0; f < spec.bins; ++f) {
      CHECK(std::abs(spec.at(0, t, f) - expected[static_cast<std::size_t>(f)]) < 1e-9);
    }
  }
}

TEST_CASE("non-power-of-two FFT sizes fall back to the naive DFT path") {
  const StftConfig cfg{36, 16, 48};
  const auto sig = make_noise(160, 19);
  const ComplexSpectrogram spec = stft(sig, cfg, 8000);
  CHECK(spec.bins == 25);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const auto expected = oracle_frame_dft(sig, cfg, t);
    for (int f = 0; f < spec.bins; ++f)
      CHECK(std::abs(spec.at(0, t, f) - expected[static_cast<std::size_t>(f)]) < 1e-9);
  }
}

TEST_CASE("a bin-centered sinusoid concentrates its energy at that bin") {
  // Hann spreads an exact-bin tone over the center bin and its neighbors;
  // the +-1 neighborhood must hold nearly everything.
  const StftConfig cfg;
  const int target_bin = 64;
  const double freq = 64.0 * 24000.0 / 512.0;
  const auto sig = make_sine(24000, freq, 24000);
  const ComplexSpectrogram spec = stft(sig, cfg, 24000);
  const std::size_t t = spec.frames / 2;  // interior frame
  double total = 0.0, neighborhood = 0.0;
  for (int f = 0; f < spec.bins; ++f) {
    const double e = std::norm(spec.at(0, t, f));
    total += e;
    if (std::abs(f - target_bin) <= 1) neighborhood += e;
  }
  CHECK(neighborhood / total >= 0.9);
  // and the peak is the target bin
  int peak = 0;
  for (int f = 1; f < spec.bins; ++f)
    if (std::norm(spec.at(0, t, f)) > std::norm(spec.at(0, t, peak))) peak = f;
  CHECK(peak == target_bin);
}

TEST_CASE("stft input validation") {
  const StftConfig cfg;
  CHECK_THROWS_AS(stft(std::vector<double>{}, cfg, 24000), std::invalid_argument);
  CHECK_THROWS_AS(stft(std::vector<double>(100, 0.0), cfg, 24000), std::invalid_argument);
  CHECK_THROWS_AS(stft(std::vector<double>(24000, 0.0), StftConfig{504, 505, 512}, 24000),
                  std::invalid_argument);
  CHECK_THROWS_AS(stft(std::vector<double>(24000, 0.0), StftConfig{600, 240, 512}, 24000),
                  std::invalid_argument);
  CHECK_THROWS_AS(stft(std::vector<double>(24000, 0.0), StftConfig{0, 240, 512}, 24000),
                  std::invalid_argument);
}
