#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace avsa {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(Vec3 v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return {v.x / n, v.y / n, v.z / n};
}

// Azimuth/elevation pair in radians. Azimuth is counterclockwise-positive
// from front (left = +pi/2) and normalized into (-pi, pi]; elevation is
// up-positive in [-pi/2, pi/2]. Coordinates: x front, y left, z up.
class Direction {
 public:
  Direction() = default;

  Direction(double azimuth_rad, double elevation_rad) {
    if (!std::isfinite(azimuth_rad) || !std::isfinite(elevation_rad))
      throw std::invalid_argument("direction angles must be finite");
    if (std::abs(elevation_rad) > kPi / 2)
      throw std::invalid_argument("elevation out of [-pi/2, pi/2]");
    azimuth_ = wrap_azimuth(azimuth_rad);
    elevation_ = elevation_rad;
  }

  static Direction from_degrees(double azimuth_deg, double elevation_deg) {
    return Direction(deg_to_rad(azimuth_deg), deg_to_rad(elevation_deg));
  }

  static Direction from_unit_vector(Vec3 v) {
    const Vec3 u = normalized(v);
    const double el = std::asin(u.z < -1.0 ? -1.0 : (u.z > 1.0 ? 1.0 : u.z));
    const double az = (u.x == 0.0 && u.y == 0.0) ? 0.0 : std::atan2(u.y, u.x);
    return Direction(az, el);
  }

  double azimuth() const { return azimuth_; }
  double elevation() const { return elevation_; }
  double azimuth_deg() const { return rad_to_deg(azimuth_); }
  double elevation_deg() const { return rad_to_deg(elevation_); }

  // Unit DOA vector (x front, y left, z up).
  Vec3 unit_vector() const {
    const double ce = std::cos(elevation_);
    return {std::cos(azimuth_) * ce, std::sin(azimuth_) * ce, std::sin(elevation_)};
  }

  static double wrap_azimuth(double az) {
    while (az > kPi) az -= 2.0 * kPi;
    while (az <= -kPi) az += 2.0 * kPi;
    return az;
  }

 private:
  double azimuth_ = 0.0;
  double elevation_ = 0.0;
};

inline Direction front() { return Direction(0.0, 0.0); }

// Great-circle angle between two directions, in radians.
inline double arc_distance(const Direction& a, const Direction& b) {
  const double c = dot(a.unit_vector(), b.unit_vector());
  return std::acos(c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c));
}

}  // namespace avsa
