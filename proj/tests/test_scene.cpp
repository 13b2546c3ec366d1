#include <catch2/catch_amalgamated.hpp>

#include "avsa/scene.hpp"
#include "helpers.hpp"

using namespace avsa;
using test_helpers::make_noise;

TEST_CASE("a single dry source reduces to encode_source") {
  const auto sig = make_noise(128, 3);
  const Direction d(0.8, 0.3);
  SceneSpec spec;
  spec.sources.emplace_back(d, sig);
  const FoaSignal scene = synthesize_scene(spec);
  const FoaSignal direct = encode_source(sig, d, spec.sample_rate);
  for (int c = 0; c < 4; ++c)
    for (std::size_t n = 0; n < sig.size(); ++n) CHECK(scene.ch[c][n] == direct.ch[c][n]);
}

TEST_CASE("pure diffuse field is isotropic in energy") {
  SceneSpec spec;
  spec.num_samples = 24000;
  spec.diffuse_gain = 0.5;
  spec.seed = 99;
  const FoaSignal x = synthesize_scene(spec);
  double e_w = 0.0, e_xyz = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    e_w += x.ch[kW][n] * x.ch[kW][n];
    e_xyz += x.ch[kY][n] * x.ch[kY][n] + x.ch[kZ][n] * x.ch[kZ][n] + x.ch[kX][n] * x.ch[kX][n];
  }
  const double ratio = e_xyz / e_w;
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}

TEST_CASE("two uncorrelated unit-power sources roughly add in W power") {
  SceneSpec spec;
  spec.sources.emplace_back(front(), make_noise(48000, 5));
  spec.sources.emplace_back(Direction(kPi / 2, 0.0), make_noise(48000, 6));
  const FoaSignal x = synthesize_scene(spec);
  double p = 0.0;
  for (double v : x.ch[kW]) p += v * v;
  p /= static_cast<double>(x.size());
  CHECK(p == Catch::Approx(2.0).epsilon(0.05));
}

TEST_CASE("scene synthesis is bit-reproducible from the seed") {
  SceneSpec spec;
  spec.num_samples = 2048;
  spec.diffuse_gain = 1.0;
  spec.seed = 1234;
  spec.sources.emplace_back(Direction(-0.4, 0.1), make_noise(2048, 8));
  const FoaSignal a = synthesize_scene(spec);
  const FoaSignal b = synthesize_scene(spec);
  for (int c = 0; c < 4; ++c) CHECK(a.ch[c] == b.ch[c]);

  spec.seed = 1235;
  const FoaSignal other = synthesize_scene(spec);
  CHECK(other.ch[kW] != a.ch[kW]);
}

TEST_CASE("scene input validation") {
  SceneSpec spec;
  spec.sources.emplace_back(front(), make_noise(100, 1));
  spec.sources.emplace_back(front(), make_noise(101, 2));
  CHECK_THROWS_AS(synthesize_scene(spec), std::invalid_argument);

  SceneSpec empty;
  CHECK_THROWS_AS(synthesize_scene(empty), std::invalid_argument);

  SceneSpec bad_gain;
  bad_gain.num_samples = 10;
  bad_gain.diffuse_gain = -1.0;
  CHECK_THROWS_AS(synthesize_scene(bad_gain), std::invalid_argument);
}

TEST_CASE("fibonacci lattice is deterministic and spread out") {
  const auto a = fibonacci_sphere(64);
  const auto b = fibonacci_sphere(64);
  REQUIRE(a.size() == 64);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].azimuth() == b[i].azimuth());
    CHECK(a[i].elevation() == b[i].elevation());
  }
  Vec3 mean{0, 0, 0};
  for (const auto& d : a) mean = mean + d.unit_vector();
  mean = (1.0 / 64.0) * mean;
  CHECK(norm(mean) < 0.05);
}
