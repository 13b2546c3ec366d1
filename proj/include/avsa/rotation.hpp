#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "avsa/foa.hpp"

namespace avsa {

struct RotationAngles {
  double yaw = 0.0;    // about z (up); the azimuth of the new look direction
  double pitch = 0.0;  // about y (left); positive tilts the look direction down
  double roll = 0.0;   // about x (front)

  static RotationAngles from_degrees(double yaw_deg, double pitch_deg, double roll_deg) {
    return {deg_to_rad(yaw_deg), deg_to_rad(pitch_deg), deg_to_rad(roll_deg)};
  }
};

struct Mat3 {
  // Row-major, acting on Cartesian (x, y, z) column vectors.
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  Vec3 apply(Vec3 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 multiply(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
};

inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
  return r;
}

inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m = {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
  return r;
}

inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  return r;
}

// 4x4 sound-field rotation in channel space (W, Y, Z, X). W is untouched;
// the lower-right block is the Cartesian rotation re-indexed to (y, z, x).
struct FoaRotation {
  std::array<std::array<double, 4>, 4> q{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

  static FoaRotation from_cartesian(const Mat3& r) {
    FoaRotation out;
    // channel order (Y, Z, X) carries Cartesian components (y, z, x)
    static constexpr int perm[3] = {1, 2, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.q[1 + i][1 + j] = r.m[perm[i]][perm[j]];
    return out;
  }

  Mat3 cartesian_block() const {
    Mat3 r;
    static constexpr int perm[3] = {1, 2, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[perm[i]][perm[j]] = q[1 + i][1 + j];
    return r;
  }
};

// Q(alpha, beta, gamma) rotates the field into the frame of a listener
// oriented by intrinsic yaw-pitch-roll (alpha, beta, gamma):
//
//   Q = Rx(-gamma) Ry(-beta) Rz(-alpha)
//
// so content at the look direction (azimuth alpha, elevation -beta) maps to
// front. Aligning with a crop at (theta0, phi0) is therefore Q(theta0, -phi0, 0).
inline FoaRotation rotation_matrix(const RotationAngles& a) {
  if (!std::isfinite(a.yaw) || !std::isfinite(a.pitch) || !std::isfinite(a.roll))
    throw std::invalid_argument("rotation angles must be finite");
  const Mat3 r = rot_x(-a.roll).multiply(rot_y(-a.pitch)).multiply(rot_z(-a.yaw));
  return FoaRotation::from_cartesian(r);
}

// Applies the matrix per sample. W is copied bit-exactly.
inline FoaSignal rotate(const FoaSignal& x, const FoaRotation& q) {
  x.validate();
  FoaSignal out(x.sample_rate, x.size());
  out.ch[kW] = x.ch[kW];
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double y = x.ch[kY][n], z = x.ch[kZ][n], xx = x.ch[kX][n];
    out.ch[kY][n] = q.q[1][1] * y + q.q[1][2] * z + q.q[1][3] * xx;
    out.ch[kZ][n] = q.q[2][1] * y + q.q[2][2] * z + q.q[2][3] * xx;
    out.ch[kX][n] = q.q[3][1] * y + q.q[3][2] * z + q.q[3][3] * xx;
  }
  return out;
}

inline Direction rotate_direction(const FoaRotation& q, const Direction& d) {
  return Direction::from_unit_vector(q.cartesian_block().apply(d.unit_vector()));
}

// Rotates the field so a source at the crop center lands at front:
// Q(theta0, -phi0, 0) applied to the signal.
inline FoaSignal align_to_crop(const FoaSignal& x, const Direction& crop) {
  return rotate(x, rotation_matrix({crop.azimuth(), -crop.elevation(), 0.0}));
}

// y_st(n) = [u(+90, 0), u(-90, 0)]^T Q(theta0, -phi0, 0) x(n).
// The two broadband beamformers reduce to L = w' + y', R = w' - y' on the
// aligned field.
inline StereoSignal extract_stereo(const FoaSignal& x, const Direction& crop) {
  const FoaSignal aligned = align_to_crop(x, crop);
  StereoSignal out;
  out.sample_rate = x.sample_rate;
  out.left.resize(aligned.size());
  out.right.resize(aligned.size());
  for (std::size_t n = 0; n < aligned.size(); ++n) {
    out.left[n] = aligned.ch[kW][n] + aligned.ch[kY][n];
    out.right[n] = aligned.ch[kW][n] - aligned.ch[kY][n];
  }
  return out;
}

}  // namespace avsa
