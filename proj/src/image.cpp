#include "oodbench/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oodbench/error.hpp"

namespace oodbench {

Image::Image(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCategory::invalid_size,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  width_ = width;
  height_ = height;
  data_.assign(static_cast<std::size_t>(width) * height * kChannels, 0);
}

Image::Image(int width, int height, std::vector<std::uint8_t> data)
    : Image(width, height) {
  if (data.size() != data_.size()) {
    throw Error(ErrorCategory::shape,
                "pixel buffer length " + std::to_string(data.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height) + "x3");
  }
  data_ = std::move(data);
}

FloatImage::FloatImage(int width, int height, int channels, double fill) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCategory::invalid_size,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCategory::shape, "float image channels must be 1 or 3");
  }
  width_ = width;
  height_ = height;
  channels_ = channels;
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

FloatImage to_float(const Image& img) {
  FloatImage out(img.width(), img.height(), 3);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / 255.0;
  return out;
}

std::uint8_t to_byte(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 1.0) return 255;
  // std::round rounds half away from zero.
  return static_cast<std::uint8_t>(std::round(v * 255.0));
}

Image from_float(const FloatImage& f) {
  if (f.channels() != 3) {
    throw Error(ErrorCategory::shape, "from_float expects a 3-channel image");
  }
  Image out(f.width(), f.height());
  auto src = f.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_byte(src[i]);
  return out;
}

FloatImage channel(const FloatImage& f, int c) {
  FloatImage out(f.width(), f.height(), 1);
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) out.at(x, y) = f.at(x, y, c);
  return out;
}

void clamp01(FloatImage& f) {
  for (double& v : f.data()) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace oodbench
