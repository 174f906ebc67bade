#pragma once

#include <vector>

#include "oodbench/image.hpp"

namespace oodbench {

// Dense 2-D real matrix used as a correlation kernel. Odd dimensions only.
class Kernel {
 public:
  Kernel() = default;
  Kernel(int width, int height, double fill = 0.0);
  Kernel(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  double sum() const noexcept;
  void normalize();

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

enum class ResizeFilter { box, bilinear, nearest };

// Symmetric reflection (..c b a | a b c .. x y z | z y x..), any offset.
int reflect_index(int i, int n) noexcept;

// Bilinear sample at real coordinates with reflect padding.
double sample_bilinear(const FloatImage& f, double x, double y, int c) noexcept;

// Per-channel 2-D correlation with reflect padding. The kernel must be odd-sized
// and sum to 1 within 1e-9; zero taps are skipped.
FloatImage convolve(const FloatImage& f, const Kernel& kernel);

// Sampled Gaussian truncated at ceil(4 sigma), normalized. sigma <= 0 yields [1].
std::vector<double> gaussian_kernel_1d(double sigma);

// Separable Gaussian smoothing with reflect padding.
FloatImage gaussian_blur(const FloatImage& f, double sigma);

FloatImage resize(const FloatImage& f, int new_width, int new_height,
                  ResizeFilter filter);

// out(p) = f(p.x + dx(p), p.y + dy(p)), bilinear, reflect padding.
// dx and dy are single-channel fields with the same width and height as f.
FloatImage remap(const FloatImage& f, const FloatImage& dx, const FloatImage& dy);

// Magnifies about the image center by `factor` (>= 1 crops and rescales).
FloatImage zoom_about_center(const FloatImage& f, double factor);

// Rotates by 180 degrees.
FloatImage rotate180(const FloatImage& f);

}  // namespace oodbench
