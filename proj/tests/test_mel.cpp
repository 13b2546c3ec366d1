#include <catch2/catch_amalgamated.hpp>

#include "avsa/mel.hpp"
#include "helpers.hpp"

using namespace avsa;
using test_helpers::make_noise;

TEST_CASE("mel scale round trip and breakpoints") {
  CHECK(hz_to_mel(1000.0) == Catch::Approx(15.0));
  for (double hz : {0.0, 123.0, 1000.0, 4000.0, 11999.0})
    CHECK(mel_to_hz(hz_to_mel(hz)) == Catch::Approx(hz).margin(1e-6));
}

TEST_CASE("default filterbank shape and row positivity") {
  const MelFilterbank fb = make_mel_filterbank(128, 512, 24000);
  CHECK(fb.n_mels == 128);
  CHECK(fb.bins == 257);
  for (double w : fb.weights) CHECK(w >= 0.0);
  for (int m = 0; m < fb.n_mels; ++m) CHECK(fb.row_sum(m) > 0.0);
}

TEST_CASE("over-resolved filterbank is rejected") {
  // 400 bands over 257 bins leaves empty rows.
  CHECK_THROWS_AS(make_mel_filterbank(400, 512, 24000), std::invalid_argument);
}

TEST_CASE("log_mel of silence is log(eps) everywhere") {
  const std::vector<double> sig(4800, 0.0);
  const MelFilterbank fb = make_mel_filterbank(128, 512, 24000);
  const FeatureTensor t = log_mel(stft(sig, StftConfig{}, 24000), fb);
  CHECK(t.channels == 1);
  CHECK(t.bands == 128);
  for (double v : t.data) CHECK(v == std::log(1e-10));
}

TEST_CASE("doubling the amplitude raises every active cell by log 4") {
  const auto sig = make_noise(4800, 21);
  std::vector<double> twice(sig);
  for (auto& v : twice) v *= 2.0;
  const MelFilterbank fb = make_mel_filterbank(128, 512, 24000);
  const StftConfig cfg;
  const FeatureTensor a = log_mel(stft(sig, cfg, 24000), fb);
  const FeatureTensor b = log_mel(stft(twice, cfg, 24000), fb);
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    if (a.data[i] < std::log(1e-10) + 5.0) continue;  // eps-dominated cells excluded
    CHECK(b.data[i] - a.data[i] == Catch::Approx(std::log(4.0)).margin(1e-9));
  }
}

TEST_CASE("log-mel shift covariance under gain", "[property]") {
  const auto sig = make_noise(4800, 23);
  const MelFilterbank fb = make_mel_filterbank(64, 512, 24000);
  const StftConfig cfg;
  const FeatureTensor base = log_mel(stft(sig, cfg, 24000), fb);
  for (double g : {3.0, 0.5, 10.0}) {
    std::vector<double> scaled(sig);
    for (auto& v : scaled) v *= g;
    const FeatureTensor t = log_mel(stft(scaled, cfg, 24000), fb);
    for (std::size_t i = 0; i < t.data.size(); ++i) {
      if (base.data[i] < std::log(1e-10) + 8.0) continue;
      CHECK(t.data[i] - base.data[i] == Catch::Approx(2.0 * std::log(g)).margin(1e-6));
    }
  }
}

TEST_CASE("white noise matches the flat-spectrum expectation per band") {
  const auto sig = make_noise(240000, 29);  // 10 s
  const MelFilterbank fb = make_mel_filterbank(128, 512, 24000);
  const FeatureTensor t = log_mel(stft(sig, StftConfig{}, 24000), fb);

  // mean band power should be proportional to the filterbank row sum
  std::vector<double> band_power(128, 0.0);
  for (std::size_t frame = 0; frame < t.frames; ++frame)
    for (int m = 0; m < 128; ++m) band_power[static_cast<std::size_t>(m)] += std::exp(t.at(0, frame, m));
  double ratio_sum = 0.0;
  std::vector<double> ratios;
  for (int m = 0; m < 128; ++m) {
    const double r = band_power[static_cast<std::size_t>(m)] / fb.row_sum(m);
    ratios.push_back(r);
    ratio_sum += r;
  }
  const double mean_ratio = ratio_sum / 128.0;
  for (double r : ratios) CHECK(r == Catch::Approx(mean_ratio).epsilon(0.10));
}

TEST_CASE("log_mel rejects mismatched shapes") {
  const auto sig = make_noise(4800, 31);
  const MelFilterbank fb = make_mel_filterbank(128, 1024, 24000);
  CHECK_THROWS_AS(log_mel(stft(sig, StftConfig{}, 24000), fb), std::invalid_argument);
}
