#pragma once

#include "oodbench/image.hpp"

namespace oodbench {

// Hue is stored on the half-degree scale [0, 180); saturation and value in [0, 1].
inline constexpr double kHueRange = 180.0;

struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

Hsv rgb_to_hsv(Rgb rgb) noexcept;
Rgb hsv_to_rgb(Hsv hsv) noexcept;

FloatImage rgb_to_hsv(const FloatImage& f);
FloatImage hsv_to_rgb(const FloatImage& f);

// ITU-R BT.601 luma, single channel.
FloatImage to_gray(const FloatImage& f);

}  // namespace oodbench
