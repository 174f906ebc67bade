#include "oodbench/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oodbench/error.hpp"

namespace oodbench {

Kernel::Kernel(int width, int height, double fill)
    : width_(width), height_(height),
      values_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), fill) {}

Kernel::Kernel(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0)) {
    throw Error(ErrorCategory::invalid_kernel, "kernel value count does not match its size");
  }
}

double Kernel::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void Kernel::normalize() {
  const double total = sum();
  if (total == 0.0) throw Error(ErrorCategory::invalid_kernel, "kernel sums to zero");
  for (double& v : values_) v /= total;
}

int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

double sample_bilinear(const FloatImage& f, double x, double y, int c) noexcept {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double tx = x - fx;
  const double ty = y - fy;
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const int w = f.width();
  const int h = f.height();
  const int xa = reflect_index(x0, w);
  const int xb = reflect_index(x0 + 1, w);
  const int ya = reflect_index(y0, h);
  const int yb = reflect_index(y0 + 1, h);
  const double top = f.at(xa, ya, c) * (1.0 - tx) + f.at(xb, ya, c) * tx;
  const double bottom = f.at(xa, yb, c) * (1.0 - tx) + f.at(xb, yb, c) * tx;
  return top * (1.0 - ty) + bottom * ty;
}

namespace {

struct Tap {
  int dx;
  int dy;
  double weight;
};

// Reflected coordinate lookup covering [-pad, n + pad).
std::vector<int> reflect_table(int n, int pad) {
  std::vector<int> table(static_cast<std::size_t>(n + 2 * pad));
  for (int i = -pad; i < n + pad; ++i) table[i + pad] = reflect_index(i, n);
  return table;
}

}  // namespace

FloatImage convolve(const FloatImage& f, const Kernel& kernel) {
  if (kernel.width() % 2 == 0 || kernel.height() % 2 == 0 || kernel.width() < 1 ||
      kernel.height() < 1) {
    throw Error(ErrorCategory::invalid_kernel,
                "kernel must be odd-sized, got " + std::to_string(kernel.width()) + "x" +
                    std::to_string(kernel.height()));
  }
  if (std::abs(kernel.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCategory::invalid_kernel, "kernel entries must sum to 1");
  }
  const int rx = kernel.width() / 2;
  const int ry = kernel.height() / 2;
  std::vector<Tap> taps;
  for (int ky = 0; ky < kernel.height(); ++ky)
    for (int kx = 0; kx < kernel.width(); ++kx)
      if (kernel.at(kx, ky) != 0.0) taps.push_back({kx - rx, ky - ry, kernel.at(kx, ky)});

  const auto xs = reflect_table(f.width(), rx);
  const auto ys = reflect_table(f.height(), ry);
  const int channels = f.channels();
  FloatImage out(f.width(), f.height(), channels);
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (const Tap& t : taps) {
          acc += t.weight * f.at(xs[x + t.dx + rx], ys[y + t.dy + ry], c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

std::vector<double> gaussian_kernel_1d(double sigma) {
  if (!(sigma > 0.0)) return {1.0};
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + radius] = v;
    total += v;
  }
  for (double& v : k) v /= total;
  return k;
}

FloatImage gaussian_blur(const FloatImage& f, double sigma) {
  const auto k = gaussian_kernel_1d(sigma);
  if (k.size() == 1) return f;
  const int r = static_cast<int>(k.size() / 2);
  const int w = f.width();
  const int h = f.height();
  const int channels = f.channels();
  const auto xs = reflect_table(w, r);
  const auto ys = reflect_table(h, r);

  FloatImage tmp(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) acc += k[i + r] * f.at(xs[x + i + r], y, c);
        tmp.at(x, y, c) = acc;
      }
  FloatImage out(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) acc += k[i + r] * tmp.at(x, ys[y + i + r], c);
        out.at(x, y, c) = acc;
      }
  return out;
}

namespace {

struct Contribution {
  int index;
  double weight;
};

// Area-coverage weights mapping n_in source cells onto n_out target cells.
std::vector<std::vector<Contribution>> box_weights(int n_in, int n_out) {
  const double scale = static_cast<double>(n_in) / n_out;
  std::vector<std::vector<Contribution>> rows(static_cast<std::size_t>(n_out));
  for (int i = 0; i < n_out; ++i) {
    const double start = i * scale;
    const double end = (i + 1) * scale;
    const int first = static_cast<int>(std::floor(start));
    const int last = std::min(n_in - 1, static_cast<int>(std::ceil(end)) - 1);
    for (int j = first; j <= last; ++j) {
      const double overlap = std::min<double>(j + 1, end) - std::max<double>(j, start);
      if (overlap > 0.0) rows[i].push_back({j, overlap / scale});
    }
  }
  return rows;
}

}  // namespace

FloatImage resize(const FloatImage& f, int new_width, int new_height, ResizeFilter filter) {
  if (new_width < 1 || new_height < 1) {
    throw Error(ErrorCategory::invalid_size,
                "resize target must be at least 1x1, got " + std::to_string(new_width) + "x" +
                    std::to_string(new_height));
  }
  const int w = f.width();
  const int h = f.height();
  const int channels = f.channels();
  FloatImage out(new_width, new_height, channels);
  const double sx = static_cast<double>(w) / new_width;
  const double sy = static_cast<double>(h) / new_height;

  switch (filter) {
    case ResizeFilter::nearest: {
      for (int y = 0; y < new_height; ++y) {
        const int src_y = std::min(h - 1, static_cast<int>(std::floor((y + 0.5) * sy)));
        for (int x = 0; x < new_width; ++x) {
          const int src_x = std::min(w - 1, static_cast<int>(std::floor((x + 0.5) * sx)));
          for (int c = 0; c < channels; ++c) out.at(x, y, c) = f.at(src_x, src_y, c);
        }
      }
      break;
    }
    case ResizeFilter::bilinear: {
      for (int y = 0; y < new_height; ++y) {
        const double src_y = std::clamp((y + 0.5) * sy - 0.5, 0.0, h - 1.0);
        const int y0 = static_cast<int>(std::floor(src_y));
        const int y1 = std::min(y0 + 1, h - 1);
        const double ty = src_y - y0;
        for (int x = 0; x < new_width; ++x) {
          const double src_x = std::clamp((x + 0.5) * sx - 0.5, 0.0, w - 1.0);
          const int x0 = static_cast<int>(std::floor(src_x));
          const int x1 = std::min(x0 + 1, w - 1);
          const double tx = src_x - x0;
          for (int c = 0; c < channels; ++c) {
            const double top = f.at(x0, y0, c) * (1.0 - tx) + f.at(x1, y0, c) * tx;
            const double bottom = f.at(x0, y1, c) * (1.0 - tx) + f.at(x1, y1, c) * tx;
            out.at(x, y, c) = top * (1.0 - ty) + bottom * ty;
          }
        }
      }
      break;
    }
    case ResizeFilter::box: {
      const auto wx = box_weights(w, new_width);
      const auto wy = box_weights(h, new_height);
      FloatImage tmp(new_width, h, channels);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < new_width; ++x)
          for (int c = 0; c < channels; ++c) {
            double acc = 0.0;
            for (const auto& [j, wt] : wx[x]) acc += wt * f.at(j, y, c);
            tmp.at(x, y, c) = acc;
          }
      for (int y = 0; y < new_height; ++y)
        for (int x = 0; x < new_width; ++x)
          for (int c = 0; c < channels; ++c) {
            double acc = 0.0;
            for (const auto& [j, wt] : wy[y]) acc += wt * tmp.at(x, j, c);
            out.at(x, y, c) = acc;
          }
      break;
    }
  }
  return out;
}

FloatImage remap(const FloatImage& f, const FloatImage& dx, const FloatImage& dy) {
  const auto field_ok = [&](const FloatImage& d) {
    return d.width() == f.width() && d.height() == f.height() && d.channels() == 1;
  };
  if (!field_ok(dx) || !field_ok(dy)) {
    throw Error(ErrorCategory::shape,
                "displacement fields must be single-channel " + std::to_string(f.width()) +
                    "x" + std::to_string(f.height()));
  }
  FloatImage out(f.width(), f.height(), f.channels());
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const double sx = x + dx.at(x, y);
      const double sy = y + dy.at(x, y);
      for (int c = 0; c < f.channels(); ++c) out.at(x, y, c) = sample_bilinear(f, sx, sy, c);
    }
  return out;
}

FloatImage zoom_about_center(const FloatImage& f, double factor) {
  const double cx = (f.width() - 1) / 2.0;
  const double cy = (f.height() - 1) / 2.0;
  FloatImage out(f.width(), f.height(), f.channels());
  for (int y = 0; y < f.height(); ++y) {
    const double sy = cy + (y - cy) / factor;
    for (int x = 0; x < f.width(); ++x) {
      const double sx = cx + (x - cx) / factor;
      for (int c = 0; c < f.channels(); ++c) out.at(x, y, c) = sample_bilinear(f, sx, sy, c);
    }
  }
  return out;
}

FloatImage rotate180(const FloatImage& f) {
  FloatImage out(f.width(), f.height(), f.channels());
  const int w = f.width();
  const int h = f.height();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < f.channels(); ++c) out.at(w - 1 - x, h - 1 - y, c) = f.at(x, y, c);
  return out;
}

}  // namespace oodbench
