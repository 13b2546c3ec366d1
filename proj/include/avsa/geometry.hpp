#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsa/direction.hpp"
#include "avsa/image.hpp"
#include "avsa/rng.hpp"

namespace avsa {

// Equirectangular mapping. The left half of the image carries positive
// azimuth: azimuth = 180 - 360 (x + 0.5) / W degrees, elevation =
// 90 - 180 (y + 0.5) / H degrees, measured at pixel centers.
inline Direction pixel_to_direction(double px, double py, int width, int height) {
  if (px < -0.5 || px >= width - 0.5 || py < -0.5 || py >= height - 0.5)
    throw std::out_of_range("pixel outside frame");
  const double az_deg = 180.0 - 360.0 * (px + 0.5) / width;
  const double el_deg = 90.0 - 180.0 * (py + 0.5) / height;
  return Direction::from_degrees(az_deg, el_deg);
}

struct PixelPos {
  double x = 0.0;
  double y = 0.0;
};

inline PixelPos direction_to_pixel(const Direction& d, int width, int height) {
  return {width * (180.0 - d.azimuth_deg()) / 360.0 - 0.5,
          height * (90.0 - d.elevation_deg()) / 180.0 - 0.5};
}

// Same mapping for continuous pixel coordinates in [0, W] x [0, H]
// (e.g. bbox centers): azimuth wraps, elevation clamps.
inline Direction direction_from_continuous_pixel(double cx, double cy, int width, int height) {
  const double az_deg = 180.0 - 360.0 * cx / width;
  double el_deg = 90.0 - 180.0 * cy / height;
  el_deg = std::clamp(el_deg, -90.0, 90.0);
  return Direction::from_degrees(Direction::wrap_azimuth(deg_to_rad(az_deg)) * 180.0 / kPi,
                                 el_deg);
}

struct Detection {
  double bbox_x = 0.0, bbox_y = 0.0, bbox_w = 0.0, bbox_h = 0.0;
  double center_x = 0.0, center_y = 0.0;
  std::string label;
  double confidence = 0.0;

  void validate(int frame_w, int frame_h) const {
    if (bbox_w <= 0.0 || bbox_h <= 0.0) throw std::invalid_argument("detection bbox is empty");
    if (bbox_x < 0.0 || bbox_y < 0.0 || bbox_x + bbox_w > frame_w || bbox_y + bbox_h > frame_h)
      throw std::invalid_argument("detection bbox outside frame");
    if (center_x < bbox_x || center_x > bbox_x + bbox_w || center_y < bbox_y ||
        center_y > bbox_y + bbox_h)
      throw std::invalid_argument("detection center outside bbox");
    if (confidence < 0.0 || confidence > 1.0)
      throw std::invalid_argument("detection confidence outside [0, 1]");
  }
};

enum class CropProvenance { detected, random_fallback };

struct Crop {
  Direction center;
  double fov_deg = 90.0;
  int out_size = 112;
  CropProvenance provenance = CropProvenance::detected;
  int detection_index = -1;  // -1 for fallback crops

  void validate() const {
    if (!(fov_deg > 0.0 && fov_deg < 180.0))
      throw std::invalid_argument("crop fov must be in (0, 180) degrees");
    if (out_size <= 0) throw std::invalid_argument("crop size must be positive");
  }
};

// Gnomonic (tangent-plane) crop with bilinear sampling, horizontal
// wrap-around and vertical clamp.
inline Image gnomonic_crop(const EquirectFrame& frame, const Crop& crop) {
  frame.validate();
  crop.validate();
  const int w = frame.width(), h = frame.height();
  const int out = crop.out_size;
  const double half_extent = std::tan(deg_to_rad(crop.fov_deg) / 2.0);

  const Vec3 fwd = crop.center.unit_vector();
  const Vec3 right{std::sin(crop.center.azimuth()), -std::cos(crop.center.azimuth()), 0.0};
  const Vec3 up = cross(right, fwd);

  Image result(out, out);
  for (int j = 0; j < out; ++j) {
    const double v = (1.0 - 2.0 * (j + 0.5) / out) * half_extent;  // up-positive
    for (int i = 0; i < out; ++i) {
      const double u = (2.0 * (i + 0.5) / out - 1.0) * half_extent;
      const Vec3 ray = normalized(fwd + u * right + v * up);
      const Direction d = Direction::from_unit_vector(ray);
      const PixelPos p = direction_to_pixel(d, w, h);

      // bilinear sample, x wraps, y clamps
      const double fx = std::floor(p.x), fy = std::floor(p.y);
      const double tx = p.x - fx, ty = p.y - fy;
      const int x0 = ((static_cast<int>(fx) % w) + w) % w;
      const int x1 = (x0 + 1) % w;
      const int y0 = std::clamp(static_cast<int>(fy), 0, h - 1);
      const int y1 = std::clamp(static_cast<int>(fy) + 1, 0, h - 1);
      for (int ch = 0; ch < 3; ++ch) {
        const double c00 = frame.image.pixel(x0, y0)[ch];
        const double c10 = frame.image.pixel(x1, y0)[ch];
        const double c01 = frame.image.pixel(x0, y1)[ch];
        const double c11 = frame.image.pixel(x1, y1)[ch];
        const double val = (1.0 - ty) * ((1.0 - tx) * c00 + tx * c10) +
                           ty * ((1.0 - tx) * c01 + tx * c11);
        result.pixel(i, j)[ch] = static_cast<std::uint8_t>(std::lrint(std::clamp(val, 0.0, 255.0)));
      }
    }
  }
  return result;
}

// Azimuth quadrants, listed in the AVSA selection order. Intervals are
// half-open with the upper endpoint closed: (90, 180], (0, 90], (-90, 0],
// (-180, -90] degrees, which partitions (-180, 180].
enum class Quadrant : int { left_back = 0, left_front = 1, right_front = 2, right_back = 3 };

inline constexpr double kQuadrantBoundsDeg[5] = {180.0, 90.0, 0.0, -90.0, -180.0};

inline Quadrant quadrant_of(double azimuth_deg) {
  for (int q = 0; q < 4; ++q)
    if (azimuth_deg <= kQuadrantBoundsDeg[q] && azimuth_deg > kQuadrantBoundsDeg[q + 1])
      return static_cast<Quadrant>(q);
  return Quadrant::left_back;  // +180 wraps here via (90, 180]
}

struct CropSelectionConfig {
  double fov_deg = 90.0;
  int out_size = 112;
  bool fov_from_bbox = false;  // derive fov from the bbox angular extent
  int frame_width = 0;
  int frame_height = 0;
};

namespace detail {

inline Crop crop_from_detection(const Detection& det, int index,
                                const CropSelectionConfig& cfg) {
  Crop crop;
  crop.center = direction_from_continuous_pixel(det.center_x, det.center_y, cfg.frame_width,
                                                cfg.frame_height);
  crop.out_size = cfg.out_size;
  crop.provenance = CropProvenance::detected;
  crop.detection_index = index;
  if (cfg.fov_from_bbox) {
    const double fov_h = 360.0 * det.bbox_w / cfg.frame_width;
    const double fov_v = 180.0 * det.bbox_h / cfg.frame_height;
    crop.fov_deg = std::clamp(std::max(fov_h, fov_v), 1.0, 179.0);
  } else {
    crop.fov_deg = cfg.fov_deg;
  }
  return crop;
}

inline Crop random_crop(SeededRng& rng, double az_lo_deg, double az_hi_deg,
                        const CropSelectionConfig& cfg) {
  Crop crop;
  const double az = rng.uniform(az_lo_deg, az_hi_deg);
  const double el = rng.uniform(-45.0, 45.0);
  crop.center = Direction::from_degrees(az, el);
  crop.fov_deg = cfg.fov_deg;
  crop.out_size = cfg.out_size;
  crop.provenance = CropProvenance::random_fallback;
  return crop;
}

}  // namespace detail

// AVC selection: uniform choice among detections; with none, a random
// direction (elevation restricted to [-45, 45] degrees).
inline Crop select_crop_avc(const std::vector<Detection>& detections,
                            const CropSelectionConfig& cfg, std::uint64_t seed) {
  if (cfg.frame_width <= 0 || cfg.frame_height <= 0)
    throw std::invalid_argument("crop selection requires the frame size");
  SeededRng rng(seed);
  if (detections.empty()) return detail::random_crop(rng, -180.0, 180.0, cfg);
  const std::size_t pick = rng.index(detections.size());
  return detail::crop_from_detection(detections[pick], static_cast<int>(pick), cfg);
}

// AVSA selection: one crop per azimuth quadrant, in the order left-back,
// left-front, right-front, right-back; uniform choice within a quadrant,
// random fallback (kept 1 degree inside the quadrant) when it is empty.
inline std::vector<Crop> select_crops_avsa(const std::vector<Detection>& detections,
                                           const CropSelectionConfig& cfg, std::uint64_t seed) {
  if (cfg.frame_width <= 0 || cfg.frame_height <= 0)
    throw std::invalid_argument("crop selection requires the frame size");
  SeededRng rng(seed);

  std::vector<std::vector<int>> per_quadrant(4);
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Direction d = direction_from_continuous_pixel(
        detections[i].center_x, detections[i].center_y, cfg.frame_width, cfg.frame_height);
    per_quadrant[static_cast<std::size_t>(quadrant_of(d.azimuth_deg()))].push_back(
        static_cast<int>(i));
  }

  std::vector<Crop> crops;
  crops.reserve(4);
  for (int q = 0; q < 4; ++q) {
    const auto& candidates = per_quadrant[static_cast<std::size_t>(q)];
    if (candidates.empty()) {
      crops.push_back(detail::random_crop(rng, kQuadrantBoundsDeg[q + 1] + 1.0,
                                          kQuadrantBoundsDeg[q] - 1.0, cfg));
    } else {
      const int pick = candidates[rng.index(candidates.size())];
      crops.push_back(
          detail::crop_from_detection(detections[static_cast<std::size_t>(pick)], pick, cfg));
    }
  }
  return crops;
}

}  // namespace avsa
