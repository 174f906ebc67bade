#include "oodbench/corruptions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "oodbench/codec.hpp"
#include "oodbench/color.hpp"
#include "oodbench/error.hpp"
#include "oodbench/plasma.hpp"

#ifndef OODBENCH_DEFAULT_FROST_DIR
#define OODBENCH_DEFAULT_FROST_DIR "assets/frost"
#endif

namespace oodbench {

namespace {

[[noreturn]] void wrong_family(CorruptionKind kind, const char* family) {
  throw Error(ErrorCategory::parameter,
              std::string(to_string(kind)) + " is not a " + family + " corruption");
}

int as_int(double v) { return static_cast<int>(std::lround(v)); }

// Whole-image mean per channel, computed from exact integer sums.
std::array<double, 3> channel_means(const Image& img) {
  std::array<std::uint64_t, 3> sums{};
  auto data = img.data();
  for (std::size_t i = 0; i < data.size(); i += 3)
    for (int c = 0; c < 3; ++c) sums[c] += data[i + c];
  const double n = 255.0 * (static_cast<double>(data.size()) / 3.0);
  return {sums[0] / n, sums[1] / n, sums[2] / n};
}

FloatImage gaussian_field(int width, int height, double mean, double stddev, Prng& rng) {
  FloatImage field(width, height, 1);
  for (double& v : field.data()) v = rng.normal(mean, stddev);
  return field;
}

double max_sample(const FloatImage& f) {
  const auto d = f.data();
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

// ----- noise ---------------------------------------------------------------

Image gaussian_noise(const Image& img, double sigma, Prng& rng) {
  FloatImage f = to_float(img);
  for (double& v : f.data()) v += rng.normal() * sigma;
  return from_float(f);
}

Image shot_noise(const Image& img, double lambda, Prng& rng) {
  FloatImage f = to_float(img);
  for (double& v : f.data()) v = static_cast<double>(rng.poisson(v * lambda)) / lambda;
  return from_float(f);
}

Image impulse_noise(const Image& img, double amount, Prng& rng) {
  Image out = img;
  for (std::uint8_t& v : out.data()) {
    const double u = rng.uniform();
    if (u < amount / 2.0) {
      v = 0;
    } else if (u < amount) {
      v = 255;
    }
  }
  return out;
}

Image speckle_noise(const Image& img, double sigma, Prng& rng) {
  FloatImage f = to_float(img);
  for (double& v : f.data()) v += v * rng.normal() * sigma;
  return from_float(f);
}

// Partial Fisher-Yates: position i and its colour are drawn together so a
// larger count rewrites a superset of the pixels a smaller count would.
Image salt_pepper_noise(const Image& img, double density, Prng& rng) {
  const auto total = static_cast<std::uint32_t>(img.width()) * img.height();
  const std::size_t count = salt_pepper_count(density, img.width(), img.height());
  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  Image out = img;
  auto data = out.data();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t j = static_cast<std::uint32_t>(i) +
                            rng.below(total - static_cast<std::uint32_t>(i));
    std::swap(order[i], order[j]);
    const std::uint8_t value = rng.below(2) == 0 ? 0 : 255;
    const std::size_t base = static_cast<std::size_t>(order[i]) * 3;
    data[base] = data[base + 1] = data[base + 2] = value;
  }
  return out;
}

// ----- photometric ---------------------------------------------------------

template <typename Fn>
FloatImage map_hsv(const FloatImage& f, Fn fn) {
  FloatImage hsv = rgb_to_hsv(f);
  auto d = hsv.data();
  for (std::size_t i = 0; i < d.size(); i += 3) fn(d[i], d[i + 1], d[i + 2]);
  return hsv_to_rgb(hsv);
}

// ----- weather -------------------------------------------------------------

Image fog(const Image& img, double amount, double decay, Prng& rng) {
  FloatImage f = to_float(img);
  const double peak = max_sample(f);
  const FloatImage plasma = plasma_fractal(std::max(f.width(), f.height()), decay, rng);
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const double haze = amount * plasma.at(x, y);
      for (int c = 0; c < 3; ++c) {
        double& v = f.at(x, y, c);
        v = (v + haze) * peak / (peak + amount);
      }
    }
  return from_float(f);
}

Image frost(const Image& img, double image_weight, double frost_weight, Prng& rng,
            const FrostTextureSet& assets) {
  if (assets.empty()) {
    throw Error(ErrorCategory::missing_asset,
                "frost needs at least one texture (looked in " + frost_directory().string() + ")");
  }
  const FloatImage& tex =
      assets.textures[rng.below(static_cast<std::uint32_t>(assets.textures.size()))];
  const auto origin = [&](int tex_size, int img_size) {
    return tex_size >= img_size
               ? static_cast<int>(rng.below(static_cast<std::uint32_t>(tex_size - img_size + 1)))
               : 0;
  };
  const int ox = origin(tex.width(), img.width());
  const int oy = origin(tex.height(), img.height());
  FloatImage f = to_float(img);
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const double t =
          tex.at(reflect_index(ox + x, tex.width()), reflect_index(oy + y, tex.height()));
      for (int c = 0; c < 3; ++c) {
        double& v = f.at(x, y, c);
        v = image_weight * v + frost_weight * t;
      }
    }
  return from_float(f);
}

Image snow(const Image& img, const ParamSet& p, Prng& rng) {
  FloatImage f = to_float(img);
  FloatImage layer = gaussian_field(f.width(), f.height(), p.get("loc"), p.get("scale"), rng);
  layer = zoom_about_center(layer, p.get("zoom"));
  const double threshold = p.get("threshold");
  for (double& v : layer.data()) v = v < threshold ? 0.0 : std::min(v, 1.0);
  const double angle = rng.uniform(-135.0, -45.0);
  layer = motion_blur(layer, as_int(p.get("blur_radius")), p.get("blur_sigma"), angle);
  const FloatImage flipped = rotate180(layer);
  const FloatImage gray = to_gray(f);
  const double mix = p.get("mix");
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const double lifted = gray.at(x, y) * 1.5 + 0.5;
      const double flakes = layer.at(x, y) + flipped.at(x, y);
      for (int c = 0; c < 3; ++c) {
        double& v = f.at(x, y, c);
        v = mix * v + (1.0 - mix) * std::max(v, lifted) + flakes;
      }
    }
  return from_float(f);
}

Image spatter(const Image& img, const ParamSet& p, Prng& rng) {
  FloatImage f = to_float(img);
  FloatImage liquid = gaussian_field(f.width(), f.height(), p.get("loc"), p.get("scale"), rng);
  liquid = gaussian_blur(liquid, p.get("sigma"));
  const double threshold = p.get("threshold");
  for (double& v : liquid.data())
    if (v < threshold) v = 0.0;
  const double multiplier = p.get("multiplier");

  if (as_int(p.get("mode")) == 0) {
    // water: light cyan droplets, strength proportional to the liquid depth
    static constexpr std::array<double, 3> kWater{175.0 / 255.0, 238.0 / 255.0, 238.0 / 255.0};
    const double peak = max_sample(liquid);
    for (int y = 0; y < f.height(); ++y)
      for (int x = 0; x < f.width(); ++x) {
        const double m = peak > 0.0 ? liquid.at(x, y) / peak * multiplier : 0.0;
        for (int c = 0; c < 3; ++c) f.at(x, y, c) += kWater[c] * m;
      }
  } else {
    // mud: smoothed binary mask, painted brown where it is dense
    static constexpr std::array<double, 3> kMud{63.0 / 255.0, 42.0 / 255.0, 20.0 / 255.0};
    FloatImage mask(f.width(), f.height(), 1);
    for (std::size_t i = 0; i < mask.size(); ++i)
      mask.data()[i] = liquid.data()[i] > threshold ? 1.0 : 0.0;
    mask = gaussian_blur(mask, multiplier);
    for (int y = 0; y < f.height(); ++y)
      for (int x = 0; x < f.width(); ++x) {
        double m = mask.at(x, y);
        if (m < 0.8) m = 0.0;
        for (int c = 0; c < 3; ++c) {
          double& v = f.at(x, y, c);
          v = v * (1.0 - m) + kMud[c] * m;
        }
      }
  }
  return from_float(f);
}

// ----- structural ----------------------------------------------------------

Image pixelate(const Image& img, double scale) {
  const FloatImage f = to_float(img);
  const int w = std::max(1, static_cast<int>(std::floor(f.width() * scale + 1e-9)));
  const int h = std::max(1, static_cast<int>(std::floor(f.height() * scale + 1e-9)));
  const FloatImage small = resize(f, w, h, ResizeFilter::box);
  return from_float(resize(small, f.width(), f.height(), ResizeFilter::nearest));
}

Image jpeg_roundtrip(const Image& img, int quality) {
  return decode_jpeg(encode_jpeg(img, quality));
}

FloatImage smoothed_unit_field(int width, int height, double sigma, Prng& rng) {
  FloatImage field(width, height, 1);
  for (double& v : field.data()) v = rng.uniform(-1.0, 1.0);
  field = gaussian_blur(field, sigma);
  double peak = 0.0;
  for (double v : field.data()) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : field.data()) v /= peak;
  return field;
}

Image facial_distortion(const Image& img, double magnitude, Prng& rng) {
  const FloatImage f = to_float(img);
  const double side = std::min(f.width(), f.height());
  const double sigma = 0.1 * side;
  const double alpha = magnitude * side;
  FloatImage dx = smoothed_unit_field(f.width(), f.height(), sigma, rng);
  FloatImage dy = smoothed_unit_field(f.width(), f.height(), sigma, rng);
  for (double& v : dx.data()) v *= alpha;
  for (double& v : dy.data()) v *= alpha;
  return from_float(remap(f, dx, dy));
}

Image random_occlusion(const Image& img, double area, Prng& rng) {
  const int w = img.width();
  const int h = img.height();
  const double side = std::min(w, h);
  const double target = area * w * h;
  std::vector<char> covered(static_cast<std::size_t>(w) * h, 0);
  std::size_t count = 0;
  Image out = img;
  // The cap only matters for degenerate sizes where ellipses can miss every pixel center.
  for (int attempt = 0; attempt < 1'000'000 && static_cast<double>(count) < target; ++attempt) {
    const double cx = rng.uniform(0.0, w);
    const double cy = rng.uniform(0.0, h);
    const double a = rng.uniform(0.05, 0.15) * side;
    const double b = rng.uniform(0.05, 0.15) * side;
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double reach = std::max(a, b);
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach)));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(cx + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach)));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(cy + reach)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5 - cx;
        const double py = y + 0.5 - cy;
        const double u = (px * ct + py * st) / a;
        const double v = (-px * st + py * ct) / b;
        if (u * u + v * v > 1.0) continue;
        char& mark = covered[static_cast<std::size_t>(y) * w + x];
        if (!mark) {
          mark = 1;
          ++count;
        }
        out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = 0;
      }
  }
  return out;
}

struct FrostCache {
  std::mutex mutex;
  std::filesystem::path override_dir;
  std::map<std::filesystem::path, std::shared_ptr<const FrostTextureSet>> loaded;
};

FrostCache& frost_cache() {
  static FrostCache cache;
  return cache;
}

}  // namespace

// ----- public building blocks ----------------------------------------------

std::size_t salt_pepper_count(double density, int width, int height) noexcept {
  const double total = static_cast<double>(width) * height;
  return static_cast<std::size_t>(std::floor(density * total + 1e-9));
}

Kernel defocus_kernel(int radius, double alias_blur) {
  const int half = radius + 1;
  const int size = 2 * half + 1;
  Kernel disk(size, size);
  for (int y = -half; y <= half; ++y)
    for (int x = -half; x <= half; ++x)
      if (x * x + y * y <= radius * radius) disk.at(x + half, y + half) = 1.0;
  disk.normalize();

  const auto g = gaussian_kernel_1d(alias_blur);
  // truncate the anti-alias smoothing to 3x3
  std::array<double, 3> g3{0.0, 1.0, 0.0};
  if (g.size() >= 3) {
    const std::size_t mid = g.size() / 2;
    const double total = g[mid - 1] + g[mid] + g[mid + 1];
    g3 = {g[mid - 1] / total, g[mid] / total, g[mid + 1] / total};
  }
  Kernel smooth(size, size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      double acc = 0.0;
      for (int j = -1; j <= 1; ++j)
        for (int i = -1; i <= 1; ++i) {
          const int sx = x + i;
          const int sy = y + j;
          if (sx < 0 || sy < 0 || sx >= size || sy >= size) continue;
          acc += g3[i + 1] * g3[j + 1] * disk.at(sx, sy);
        }
      smooth.at(x, y) = acc;
    }
  smooth.normalize();
  return smooth;
}

Kernel motion_kernel(int radius, double sigma, double angle_deg) {
  const int taps = 2 * radius + 1;
  const int half = 2 * radius;
  const int size = 2 * half + 1;
  std::vector<double> weights(static_cast<std::size_t>(taps));
  double total = 0.0;
  for (int i = 0; i < taps; ++i) {
    weights[i] = sigma > 0.0 ? std::exp(-(i * i) / (2.0 * sigma * sigma)) : (i == 0 ? 1.0 : 0.0);
    total += weights[i];
  }
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double dir_x = std::cos(theta);
  const double dir_y = std::sin(theta);
  Kernel k(size, size);
  for (int i = 0; i < taps; ++i) {
    // out(p) += w_i * f(p - offset_i): the correlation tap sits at -offset_i
    const int ox = static_cast<int>(std::round(i * dir_x));
    const int oy = static_cast<int>(std::round(i * dir_y));
    k.at(half - ox, half - oy) += weights[i] / total;
  }
  return k;
}

FloatImage motion_blur(const FloatImage& f, int radius, double sigma, double angle_deg) {
  return convolve(f, motion_kernel(radius, sigma, angle_deg));
}

FloatImage zoom_blur(const FloatImage& f, double zoom_start, double zoom_max, double zoom_step) {
  const int count = std::max(0, static_cast<int>(std::lround((zoom_max - zoom_start) / zoom_step)));
  if (count == 0) return f;
  FloatImage acc = f;
  for (int k = 0; k < count; ++k) {
    const FloatImage zoomed = zoom_about_center(f, zoom_start + k * zoom_step);
    auto dst = acc.data();
    auto src = zoomed.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  for (double& v : acc.data()) v /= (count + 1);
  return acc;
}

FloatImage adjust_brightness(const FloatImage& f, double shift) {
  return map_hsv(f, [shift](double&, double&, double& v) { v = std::clamp(v + shift, 0.0, 1.0); });
}

FloatImage adjust_contrast(const FloatImage& f, double factor) {
  std::array<double, 3> means{};
  const auto d = f.data();
  for (std::size_t i = 0; i < d.size(); i += 3)
    for (int c = 0; c < 3; ++c) means[c] += d[i + c];
  const double n = static_cast<double>(d.size() / 3);
  for (double& m : means) m /= n;
  FloatImage out = f;
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); i += 3)
    for (int c = 0; c < 3; ++c) o[i + c] = std::clamp((o[i + c] - means[c]) * factor + means[c], 0.0, 1.0);
  return out;
}

FloatImage adjust_saturation(const FloatImage& f, double scale, double offset) {
  return map_hsv(f, [=](double&, double& s, double&) { s = std::clamp(s * scale + offset, 0.0, 1.0); });
}

FloatImage shift_hue(const FloatImage& f, double delta) {
  return map_hsv(f, [delta](double& h, double&, double&) {
    h = std::fmod(h + delta, kHueRange);
    if (h < 0.0) h += kHueRange;
  });
}

// ----- frost assets --------------------------------------------------------

FrostTextureSet load_frost_textures(const std::filesystem::path& dir) {
  FrostTextureSet set;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return set;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) set.textures.push_back(decode_png_gray(read_file(file)));
  return set;
}

std::filesystem::path frost_directory() {
  if (const char* env = std::getenv("OODBENCH_FROST_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  FrostCache& cache = frost_cache();
  std::lock_guard lock(cache.mutex);
  if (!cache.override_dir.empty()) return cache.override_dir;
  return OODBENCH_DEFAULT_FROST_DIR;
}

void set_frost_directory(const std::filesystem::path& dir) {
  FrostCache& cache = frost_cache();
  std::lock_guard lock(cache.mutex);
  cache.override_dir = dir;
}

std::shared_ptr<const FrostTextureSet> default_frost_textures() {
  const std::filesystem::path dir = frost_directory();
  FrostCache& cache = frost_cache();
  std::lock_guard lock(cache.mutex);
  auto it = cache.loaded.find(dir);
  if (it != cache.loaded.end()) return it->second;
  auto set = std::make_shared<const FrostTextureSet>(load_frost_textures(dir));
  cache.loaded.emplace(dir, set);
  return set;
}

// ----- families ------------------------------------------------------------

Image apply_noise(const Image& img, const ParamSet& p, Prng& rng) {
  switch (p.kind) {
    case CorruptionKind::gaussian_noise: return gaussian_noise(img, p.get("sigma"), rng);
    case CorruptionKind::shot_noise: return shot_noise(img, p.get("lambda"), rng);
    case CorruptionKind::impulse_noise: return impulse_noise(img, p.get("amount"), rng);
    case CorruptionKind::speckle_noise: return speckle_noise(img, p.get("sigma"), rng);
    case CorruptionKind::salt_pepper_noise: return salt_pepper_noise(img, p.get("density"), rng);
    default: wrong_family(p.kind, "noise");
  }
}

Image apply_blur(const Image& img, const ParamSet& p, Prng& rng) {
  switch (p.kind) {
    case CorruptionKind::defocus_blur:
      return from_float(
          convolve(to_float(img), defocus_kernel(as_int(p.get("radius")), p.get("alias_blur"))));
    case CorruptionKind::motion_blur: {
      const double angle = rng.uniform(-45.0, 45.0);
      return from_float(
          motion_blur(to_float(img), as_int(p.get("radius")), p.get("sigma"), angle));
    }
    case CorruptionKind::zoom_blur:
      return from_float(zoom_blur(to_float(img), p.get("zoom_start"), p.get("zoom_max"),
                                  p.get("zoom_step")));
    default: wrong_family(p.kind, "blur");
  }
}

Image apply_photometric(const Image& img, const ParamSet& p, Prng& rng) {
  switch (p.kind) {
    case CorruptionKind::brightness:
      return from_float(adjust_brightness(to_float(img), p.get("shift")));
    case CorruptionKind::contrast: {
      // integer channel sums keep the mean exact, so constant images are fixed points
      const auto means = channel_means(img);
      const double factor = p.get("factor");
      FloatImage f = to_float(img);
      auto d = f.data();
      for (std::size_t i = 0; i < d.size(); i += 3)
        for (int c = 0; c < 3; ++c) d[i + c] = (d[i + c] - means[c]) * factor + means[c];
      return from_float(f);
    }
    case CorruptionKind::saturate:
      return from_float(adjust_saturation(to_float(img), p.get("scale"), p.get("offset")));
    case CorruptionKind::color_shift: {
      const double m = p.get("max_hue_shift");
      const double delta = rng.uniform(-m, m);
      return from_float(shift_hue(to_float(img), delta));
    }
    default: wrong_family(p.kind, "photometric");
  }
}

Image apply_weather(const Image& img, const ParamSet& p, Prng& rng, const FrostTextureSet& assets) {
  switch (p.kind) {
    case CorruptionKind::fog: return fog(img, p.get("amount"), p.get("wibble_decay"), rng);
    case CorruptionKind::frost:
      return frost(img, p.get("image_weight"), p.get("frost_weight"), rng, assets);
    case CorruptionKind::snow: return snow(img, p, rng);
    case CorruptionKind::spatter: return spatter(img, p, rng);
    default: wrong_family(p.kind, "weather");
  }
}

Image apply_structural(const Image& img, const ParamSet& p, Prng& rng) {
  switch (p.kind) {
    case CorruptionKind::pixelate: return pixelate(img, p.get("scale"));
    case CorruptionKind::jpeg_compression: return jpeg_roundtrip(img, as_int(p.get("quality")));
    case CorruptionKind::facial_distortion: return facial_distortion(img, p.get("magnitude"), rng);
    case CorruptionKind::random_occlusion: return random_occlusion(img, p.get("area"), rng);
    default: wrong_family(p.kind, "structural");
  }
}

Image apply_corruption(const Image& img, CorruptionKind kind, Severity level, std::uint64_t seed,
                       const FrostTextureSet& assets) {
  const ParamSet params = severity_params(kind, level);
  Prng rng(seed);
  switch (kind) {
    case CorruptionKind::gaussian_noise:
    case CorruptionKind::shot_noise:
    case CorruptionKind::impulse_noise:
    case CorruptionKind::speckle_noise:
    case CorruptionKind::salt_pepper_noise:
      return apply_noise(img, params, rng);
    case CorruptionKind::defocus_blur:
    case CorruptionKind::motion_blur:
    case CorruptionKind::zoom_blur:
      return apply_blur(img, params, rng);
    case CorruptionKind::brightness:
    case CorruptionKind::contrast:
    case CorruptionKind::saturate:
    case CorruptionKind::color_shift:
      return apply_photometric(img, params, rng);
    case CorruptionKind::fog:
    case CorruptionKind::frost:
    case CorruptionKind::snow:
    case CorruptionKind::spatter:
      return apply_weather(img, params, rng, assets);
    case CorruptionKind::pixelate:
    case CorruptionKind::jpeg_compression:
    case CorruptionKind::facial_distortion:
    case CorruptionKind::random_occlusion:
      return apply_structural(img, params, rng);
  }
  throw Error(ErrorCategory::unknown_kind, "unhandled corruption kind");
}

Image apply_corruption(const Image& img, CorruptionKind kind, Severity level, std::uint64_t seed) {
  if (kind == CorruptionKind::frost) {
    return apply_corruption(img, kind, level, seed, *default_frost_textures());
  }
  static const FrostTextureSet kNone;
  return apply_corruption(img, kind, level, seed, kNone);
}

}  // namespace oodbench
