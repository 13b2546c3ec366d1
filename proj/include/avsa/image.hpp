#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace avsa {

// 8-bit RGB image.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  Image() = default;
  Image(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    rgb.assign(static_cast<std::size_t>(w) * h * 3, 0);
  }

  std::uint8_t* pixel(int x, int y) {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
};

// Full 360 x 180 equirectangular panorama; width must be twice the height.
struct EquirectFrame {
  Image image;

  EquirectFrame() = default;
  explicit EquirectFrame(Image img) : image(std::move(img)) { validate(); }
  EquirectFrame(int w, int h) : image(w, h) { validate(); }

  int width() const { return image.width; }
  int height() const { return image.height; }

  void validate() const {
    if (image.width <= 0 || image.height <= 0)
      throw std::invalid_argument("equirect frame dimensions must be positive");
    if (image.width != 2 * image.height)
      throw std::invalid_argument("equirect frame must be 2:1 (360 x 180 degrees)");
  }
};

}  // namespace avsa
