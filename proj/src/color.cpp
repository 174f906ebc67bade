#include "oodbench/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "oodbench/error.hpp"

namespace oodbench {

Hsv rgb_to_hsv(Rgb c) noexcept {
  const double max = std::max({c.r, c.g, c.b});
  const double min = std::min({c.r, c.g, c.b});
  const double delta = max - min;
  Hsv out;
  out.v = max;
  out.s = max > 0.0 ? delta / max : 0.0;
  if (delta <= 0.0) return out;  // achromatic: hue 0 by convention

  double sector;
  if (max == c.r) {
    sector = (c.g - c.b) / delta;
  } else if (max == c.g) {
    sector = 2.0 + (c.b - c.r) / delta;
  } else {
    sector = 4.0 + (c.r - c.g) / delta;
  }
  // one sector spans 60 degrees, i.e. 30 on the half-degree scale
  double h = sector * (kHueRange / 6.0);
  if (h < 0.0) h += kHueRange;
  if (h >= kHueRange) h -= kHueRange;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(Hsv c) noexcept {
  double h = std::fmod(c.h, kHueRange);
  if (h < 0.0) h += kHueRange;
  const double sector = h / (kHueRange / 6.0);
  const int i = std::min(static_cast<int>(std::floor(sector)), 5);
  const double frac = sector - i;
  const double v = c.v;
  const double p = v * (1.0 - c.s);
  const double q = v * (1.0 - c.s * frac);
  const double t = v * (1.0 - c.s * (1.0 - frac));
  switch (i) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

namespace {

template <typename Fn>
FloatImage map_pixels(const FloatImage& f, Fn fn) {
  if (f.channels() != 3) {
    throw Error(ErrorCategory::shape, "color conversion expects 3 channels");
  }
  FloatImage out(f.width(), f.height(), 3);
  auto src = f.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const auto [a, b, c] = fn(src[i], src[i + 1], src[i + 2]);
    dst[i] = a;
    dst[i + 1] = b;
    dst[i + 2] = c;
  }
  return out;
}

}  // namespace

FloatImage rgb_to_hsv(const FloatImage& f) {
  return map_pixels(f, [](double r, double g, double b) {
    const Hsv hsv = rgb_to_hsv(Rgb{r, g, b});
    return std::array<double, 3>{hsv.h, hsv.s, hsv.v};
  });
}

FloatImage hsv_to_rgb(const FloatImage& f) {
  return map_pixels(f, [](double h, double s, double v) {
    const Rgb rgb = hsv_to_rgb(Hsv{h, s, v});
    return std::array<double, 3>{rgb.r, rgb.g, rgb.b};
  });
}

FloatImage to_gray(const FloatImage& f) {
  if (f.channels() != 3) {
    throw Error(ErrorCategory::shape, "to_gray expects 3 channels");
  }
  FloatImage out(f.width(), f.height(), 1);
  auto src = f.data();
  auto dst = out.data();
  for (std::size_t i = 0, j = 0; i < src.size(); i += 3, ++j) {
    dst[j] = 0.299 * src[i] + 0.587 * src[i + 1] + 0.114 * src[i + 2];
  }
  return out;
}

}  // namespace oodbench
