#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "avsa/foa.hpp"
#include "avsa/rotation.hpp"
#include "helpers.hpp"

using namespace avsa;
using test_helpers::make_noise;

namespace {

double max_channel_error(const FoaSignal& a, const FoaSignal& b) {
  double m = 0.0;
  for (int c = 0; c < 4; ++c)
    for (std::size_t n = 0; n < a.size(); ++n)
      m = std::max(m, std::abs(a.ch[c][n] - b.ch[c][n]));
  return m;
}

std::vector<Direction> direction_grid(int n_az, int n_el) {
  std::vector<Direction> grid;
  for (int i = 0; i < n_az; ++i)
    for (int j = 0; j < n_el; ++j)
      grid.emplace_back(-kPi + 2.0 * kPi * (i + 0.5) / n_az,
                        -kPi / 2 + kPi * (j + 0.5) / n_el);
  return grid;
}

}  // namespace

TEST_CASE("Direction normalizes azimuth and validates elevation") {
  CHECK(Direction(3.0 * kPi, 0.0).azimuth() == Catch::Approx(kPi));
  CHECK(Direction(-kPi, 0.0).azimuth() == Catch::Approx(kPi));  // (-pi, pi]
  CHECK(Direction(kPi / 4, 0.1).azimuth() == Catch::Approx(kPi / 4));
  CHECK_NOTHROW(Direction(0.0, kPi / 2));
  CHECK_THROWS_AS(Direction(0.0, kPi / 2 + 0.01), std::invalid_argument);
  CHECK_THROWS_AS(Direction(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("encode_direction matches the FOA directional response") {
  const FoaGainVector front_g = encode_direction(front());
  CHECK(front_g.w == 1.0);
  CHECK(front_g.y == Catch::Approx(0.0).margin(1e-15));
  CHECK(front_g.z == Catch::Approx(0.0).margin(1e-15));
  CHECK(front_g.x == 1.0);

  const FoaGainVector left = encode_direction(Direction(kPi / 2, 0.0));
  CHECK(left.y == Catch::Approx(1.0));
  CHECK(left.x == Catch::Approx(0.0).margin(1e-15));
  CHECK(left.z == Catch::Approx(0.0).margin(1e-15));

  const FoaGainVector zenith = encode_direction(Direction(0.0, kPi / 2));
  CHECK(zenith.z == Catch::Approx(1.0));
  CHECK(zenith.y == Catch::Approx(0.0).margin(1e-15));
  CHECK(std::abs(zenith.x) < 1e-15);
}

TEST_CASE("encode_direction gains are a unit DOA vector", "[property]") {
  SeededRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Direction d(rng.uniform(-8.0, 8.0), rng.uniform(-kPi / 2, kPi / 2));
    const FoaGainVector g = encode_direction(d);
    CHECK(g.w == 1.0);
    CHECK(g.x * g.x + g.y * g.y + g.z * g.z == Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("encode_source copies W and scales the dipoles") {
  const std::vector<double> s{1.0, -1.0};
  const FoaSignal x = encode_source(s, front(), 24000);
  CHECK(x.ch[kW] == s);
  CHECK(x.ch[kX] == s);
  CHECK(x.ch[kY] == std::vector<double>{0.0, 0.0});
  CHECK(x.ch[kZ] == std::vector<double>{0.0, 0.0});

  const auto sig = make_noise(64, 5);
  const FoaSignal left = encode_source(sig, Direction(kPi / 2, 0.0), 24000);
  for (std::size_t n = 0; n < sig.size(); ++n)
    CHECK(left.ch[kY][n] == Catch::Approx(sig[n]).margin(1e-15));

  CHECK_THROWS_AS(encode_source({}, front(), 24000), std::invalid_argument);
}

TEST_CASE("encode_source DOA is recoverable from channel ratios", "[property]") {
  SeededRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Direction d(rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2, kPi / 2));
    const auto sig = make_noise(32, 100 + trial);
    const FoaSignal x = encode_source(sig, d, 24000);
    for (std::size_t n = 0; n < sig.size(); ++n) {
      if (std::abs(x.ch[kW][n]) < 1e-6) continue;
      const Vec3 doa{x.ch[kX][n] / x.ch[kW][n], x.ch[kY][n] / x.ch[kW][n],
                     x.ch[kZ][n] / x.ch[kW][n]};
      const Vec3 expected = d.unit_vector();
      CHECK(std::abs(doa.x - expected.x) < 1e-9);
      CHECK(std::abs(doa.y - expected.y) < 1e-9);
      CHECK(std::abs(doa.z - expected.z) < 1e-9);
    }
  }
}

TEST_CASE("rotation_matrix(0,0,0) is the identity") {
  const FoaRotation q = rotation_matrix({0.0, 0.0, 0.0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(q.q[i][j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("rotation matrices are orthonormal with unit determinant", "[property]") {
  SeededRng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const RotationAngles a{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                           rng.uniform(-kPi, kPi)};
    const Mat3 r = rotation_matrix(a).cartesian_block();
    const Mat3 rtr = r.transposed().multiply(r);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(rtr.m[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);
    const double det = r.m[0][0] * (r.m[1][1] * r.m[2][2] - r.m[1][2] * r.m[2][1]) -
                       r.m[0][1] * (r.m[1][0] * r.m[2][2] - r.m[1][2] * r.m[2][0]) +
                       r.m[0][2] * (r.m[1][0] * r.m[2][1] - r.m[1][1] * r.m[2][0]);
    CHECK(std::abs(det - 1.0) < 1e-12);
    // W row and column untouched
    const FoaRotation q = rotation_matrix(a);
    CHECK(q.q[0][0] == 1.0);
    for (int i = 1; i < 4; ++i) {
      CHECK(q.q[0][i] == 0.0);
      CHECK(q.q[i][0] == 0.0);
    }
  }
}

TEST_CASE("encode-rotate commutation holds on a dense grid", "[property]") {
  SeededRng rng(31);
  const auto grid = direction_grid(36, 13);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const FoaRotation q = rotation_matrix(
        {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)});
    for (const Direction& d : grid) {
      const FoaGainVector u = encode_direction(d);
      const FoaGainVector expected = encode_direction(rotate_direction(q, d));
      // apply the 4x4 to the gain vector
      const double gy = q.q[1][1] * u.y + q.q[1][2] * u.z + q.q[1][3] * u.x;
      const double gz = q.q[2][1] * u.y + q.q[2][2] * u.z + q.q[2][3] * u.x;
      const double gx = q.q[3][1] * u.y + q.q[3][2] * u.z + q.q[3][3] * u.x;
      worst = std::max({worst, std::abs(gy - expected.y), std::abs(gz - expected.z),
                        std::abs(gx - expected.x)});
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("pinned yaw semantics: positive yaw fronts content at that azimuth") {
  // Q(alpha, 0, 0) maps content at azimuth alpha to front, i.e. shifts
  // content azimuth by -alpha.
  const FoaRotation q = rotation_matrix({kPi / 2, 0.0, 0.0});
  const Direction moved = rotate_direction(q, Direction(kPi / 2, 0.0));
  CHECK(std::abs(moved.azimuth()) < 1e-12);
  CHECK(std::abs(moved.elevation()) < 1e-12);
  const Direction front_moved = rotate_direction(q, front());
  CHECK(front_moved.azimuth() == Catch::Approx(-kPi / 2));
}

TEST_CASE("rotate: identity, inverse and W invariance") {
  const auto sig = make_noise(256, 7);
  const FoaSignal x = encode_source(sig, Direction(0.4, -0.2), 24000);

  const FoaSignal same = rotate(x, rotation_matrix({0.0, 0.0, 0.0}));
  CHECK(max_channel_error(same, x) == 0.0);

  const RotationAngles a{1.1, 0.0, 0.0};
  const FoaSignal there = rotate(x, rotation_matrix(a));
  const FoaSignal back = rotate(there, rotation_matrix({-a.yaw, 0.0, 0.0}));
  CHECK(max_channel_error(back, x) < 1e-9);

  // W must be bit-exact
  CHECK(std::memcmp(there.ch[kW].data(), x.ch[kW].data(), x.size() * sizeof(double)) == 0);
}

TEST_CASE("rotate commutes with encode_source via the rotated direction", "[property]") {
  SeededRng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const Direction d(rng.uniform(-kPi, kPi), rng.uniform(-1.4, 1.4));
    const RotationAngles a{rng.uniform(-kPi, kPi), rng.uniform(-1.0, 1.0),
                           rng.uniform(-kPi, kPi)};
    const auto sig = make_noise(64, 300 + trial);
    const FoaRotation q = rotation_matrix(a);
    const FoaSignal rotated = rotate(encode_source(sig, d, 24000), q);
    const FoaSignal direct = encode_source(sig, rotate_direction(q, d), 24000);
    CHECK(max_channel_error(rotated, direct) < 1e-9);
  }
}

TEST_CASE("rotation conserves energy", "[property]") {
  SeededRng rng(43);
  FoaSignal x(24000, 512);
  for (int c = 0; c < 4; ++c) x.ch[c] = make_noise(512, 50 + c);
  double before = 0.0;
  for (int c = 0; c < 4; ++c)
    for (double v : x.ch[c]) before += v * v;
  for (int trial = 0; trial < 20; ++trial) {
    const FoaSignal y = rotate(x, rotation_matrix({rng.uniform(-kPi, kPi),
                                                   rng.uniform(-kPi, kPi),
                                                   rng.uniform(-kPi, kPi)}));
    double after = 0.0;
    for (int c = 0; c < 4; ++c)
      for (double v : y.ch[c]) after += v * v;
    CHECK(std::abs(after - before) / before < 1e-9);
  }
}

TEST_CASE("beamform toward the source DOA doubles it") {
  SeededRng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction d(rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2, kPi / 2));
    const auto sig = make_noise(128, 400 + trial);
    const auto beam = beamform(encode_source(sig, d, 24000), d);
    for (std::size_t n = 0; n < sig.size(); ++n)
      CHECK(beam[n] == Catch::Approx(2.0 * sig[n]).epsilon(1e-12).margin(1e-300));
  }
}

TEST_CASE("beamform toward an orthogonal dipole direction passes only W") {
  const auto sig = make_noise(128, 53);
  const FoaSignal x = encode_source(sig, front(), 24000);
  const auto beam = beamform(x, Direction(kPi / 2, 0.0));
  for (std::size_t n = 0; n < sig.size(); ++n) CHECK(beam[n] == sig[n]);
}

TEST_CASE("beamform of silence is silence") {
  const FoaSignal x(24000, 64);
  for (double v : beamform(x, Direction(0.3, 0.2))) CHECK(v == 0.0);
}

TEST_CASE("beamformer linearity", "[property]") {
  // Exact on integer-valued signals at axis directions, tight elsewhere.
  std::vector<double> s1{1, -2, 3, 0}, s2{5, 4, -1, 2};
  const FoaSignal a = encode_source(s1, front(), 24000);
  const FoaSignal b = encode_source(s2, Direction(kPi / 2, 0.0), 24000);
  FoaSignal sum(24000, s1.size());
  for (int c = 0; c < 4; ++c)
    for (std::size_t n = 0; n < s1.size(); ++n) sum.ch[c][n] = a.ch[c][n] + b.ch[c][n];
  const Direction beam_dir(0.0, kPi / 2);
  const auto lhs = beamform(sum, beam_dir);
  const auto ra = beamform(a, beam_dir);
  const auto rb = beamform(b, beam_dir);
  for (std::size_t n = 0; n < s1.size(); ++n) CHECK(lhs[n] == ra[n] + rb[n]);

  SeededRng rng(59);
  FoaSignal u(24000, 64), v(24000, 64), w(24000, 64);
  for (int c = 0; c < 4; ++c) {
    u.ch[c] = make_noise(64, 600 + c);
    v.ch[c] = make_noise(64, 700 + c);
    for (std::size_t n = 0; n < 64; ++n) w.ch[c][n] = u.ch[c][n] + v.ch[c][n];
  }
  const Direction d(rng.uniform(-kPi, kPi), rng.uniform(-1.0, 1.0));
  const auto lw = beamform(w, d);
  const auto lu = beamform(u, d);
  const auto lv = beamform(v, d);
  for (std::size_t n = 0; n < 64; ++n)
    CHECK(lw[n] == Catch::Approx(lu[n] + lv[n]).margin(1e-12));
}

TEST_CASE("align_to_crop fronts a source at the crop center") {
  CHECK(max_channel_error(align_to_crop(encode_source({1, 2, 3}, Direction(0.5, 0.2), 24000),
                                        front()),
                          encode_source({1, 2, 3}, Direction(0.5, 0.2), 24000)) < 1e-15);

  SeededRng rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const Direction crop(rng.uniform(-kPi, kPi), rng.uniform(-1.5, 1.5));
    const auto sig = make_noise(64, 800 + trial);
    const FoaSignal aligned = align_to_crop(encode_source(sig, crop, 24000), crop);
    CHECK(max_channel_error(aligned, encode_source(sig, front(), 24000)) < 1e-9);

    const auto beam = beamform(aligned, front());
    for (std::size_t n = 0; n < sig.size(); ++n)
      CHECK(beam[n] == Catch::Approx(2.0 * sig[n]).margin(1e-9));
  }
}

TEST_CASE("extract_stereo matches the printed beamformer gains") {
  SeededRng rng(67);
  const auto sig = make_noise(64, 71);

  SECTION("source at crop center: L = R = s") {
    const Direction crop(rng.uniform(-kPi, kPi), rng.uniform(-1.4, 1.4));
    const StereoSignal y = extract_stereo(encode_source(sig, crop, 24000), crop);
    for (std::size_t n = 0; n < sig.size(); ++n) {
      CHECK(y.left[n] == Catch::Approx(sig[n]).margin(1e-9));
      CHECK(y.right[n] == Catch::Approx(sig[n]).margin(1e-9));
    }
  }

  SECTION("source 90 degrees left of the crop center: L = 2s, R = 0") {
    const double crop_az = rng.uniform(-kPi, kPi);
    const Direction crop(crop_az, 0.0);
    const Direction src(crop_az + kPi / 2, 0.0);
    const StereoSignal y = extract_stereo(encode_source(sig, src, 24000), crop);
    for (std::size_t n = 0; n < sig.size(); ++n) {
      CHECK(y.left[n] == Catch::Approx(2.0 * sig[n]).margin(1e-9));
      CHECK(y.right[n] == Catch::Approx(0.0).margin(1e-9));
    }
  }

  SECTION("front crop, source at hard right: L = 0, R = 2s") {
    const StereoSignal y =
        extract_stereo(encode_source(sig, Direction(-kPi / 2, 0.0), 24000), front());
    for (std::size_t n = 0; n < sig.size(); ++n) {
      CHECK(y.left[n] == Catch::Approx(0.0).margin(1e-9));
      CHECK(y.right[n] == Catch::Approx(2.0 * sig[n]).margin(1e-9));
    }
  }
}

TEST_CASE("stereo consistency: extraction equals align-then-extract-front") {
  FoaSignal x(24000, 128);
  for (int c = 0; c < 4; ++c) x.ch[c] = make_noise(128, 900 + c);
  const Direction crop(0.7, -0.3);
  const StereoSignal direct = extract_stereo(x, crop);
  const StereoSignal staged = extract_stereo(align_to_crop(x, crop), front());
  for (std::size_t n = 0; n < direct.size(); ++n) {
    CHECK(std::abs(direct.left[n] - staged.left[n]) < 1e-12);
    CHECK(std::abs(direct.right[n] - staged.right[n]) < 1e-12);
  }
}

TEST_CASE("single plane wave: dipole energy equals W energy") {
  SeededRng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction d(rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2, kPi / 2));
    const FoaSignal x = encode_source(make_noise(256, 1000 + trial), d, 24000);
    double e_w = 0.0, e_xyz = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      e_w += x.ch[kW][n] * x.ch[kW][n];
      e_xyz += x.ch[kY][n] * x.ch[kY][n] + x.ch[kZ][n] * x.ch[kZ][n] +
               x.ch[kX][n] * x.ch[kX][n];
    }
    CHECK(e_xyz == Catch::Approx(e_w).epsilon(1e-12));
  }
}
