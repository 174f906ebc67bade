#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oodbench {

// Owned 8-bit RGB raster, row-major, interleaved channels.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int width, int height);
  Image(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return kChannels; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Real-valued working raster with 1 or 3 channels, nominally in [0, 1].
class FloatImage {
 public:
  FloatImage() = default;
  FloatImage(int width, int height, int channels = 3, double fill = 0.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  double at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool same_shape(const FloatImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const FloatImage&, const FloatImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 3;
  std::vector<double> data_;
};

FloatImage to_float(const Image& img);

// Clamps to [0,1], scales by 255 and rounds half away from zero.
Image from_float(const FloatImage& f);

std::uint8_t to_byte(double v);

// Extracts channel `c` as a single-channel image.
FloatImage channel(const FloatImage& f, int c);

// Clamps every sample to [0, 1] in place.
void clamp01(FloatImage& f);

}  // namespace oodbench
