#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "oodbench/corruption_kind.hpp"
#include "oodbench/filter.hpp"
#include "oodbench/image.hpp"
#include "oodbench/params.hpp"
#include "oodbench/random.hpp"

namespace oodbench {

// Grayscale frost textures in [0, 1].
struct FrostTextureSet {
  std::vector<FloatImage> textures;
  bool empty() const noexcept { return textures.empty(); }
};

// Loads every *.png in `dir` (sorted by file name) as a grayscale texture.
FrostTextureSet load_frost_textures(const std::filesystem::path& dir);

// Directory used when no texture set is passed explicitly: $OODBENCH_FROST_DIR if
// set, otherwise the override from set_frost_directory, otherwise the
// repository assets directory baked in at build time.
std::filesystem::path frost_directory();
void set_frost_directory(const std::filesystem::path& dir);

// Cached load of frost_directory(). Returns an empty set when the directory
// holds no textures; frost then fails with a missing-asset error.
std::shared_ptr<const FrostTextureSet> default_frost_textures();

// Family entry points. Each checks that params.kind belongs to its family.
Image apply_noise(const Image& img, const ParamSet& params, Prng& rng);
Image apply_blur(const Image& img, const ParamSet& params, Prng& rng);
Image apply_photometric(const Image& img, const ParamSet& params, Prng& rng);
Image apply_weather(const Image& img, const ParamSet& params, Prng& rng,
                    const FrostTextureSet& assets);
Image apply_structural(const Image& img, const ParamSet& params, Prng& rng);

// Resolves the level table, seeds a Prng from `seed` and dispatches. A pure
// function of (pixels, kind, level, seed, frost assets).
Image apply_corruption(const Image& img, CorruptionKind kind, Severity level,
                       std::uint64_t seed, const FrostTextureSet& assets);
Image apply_corruption(const Image& img, CorruptionKind kind, Severity level,
                       std::uint64_t seed);

// Building blocks, exposed for direct testing.

// Unit-sum disk of the given radius, smoothed by a 3x3 Gaussian of sigma alias_blur.
Kernel defocus_kernel(int radius, double alias_blur);

// Taps i = 0..2*radius along the direction `angle_deg` (x right, y down),
// weighted by exp(-i^2 / (2 sigma^2)); out(p) = sum_i w_i * f(p - round(i*dir)).
Kernel motion_kernel(int radius, double sigma, double angle_deg);
FloatImage motion_blur(const FloatImage& f, int radius, double sigma, double angle_deg);

// Average of f and its center zooms at start, start+step, ... (< zoom_max).
FloatImage zoom_blur(const FloatImage& f, double zoom_start, double zoom_max, double zoom_step);

FloatImage adjust_brightness(const FloatImage& f, double shift);
FloatImage adjust_contrast(const FloatImage& f, double factor);
FloatImage adjust_saturation(const FloatImage& f, double scale, double offset);
FloatImage shift_hue(const FloatImage& f, double delta);

// Pixel count rewritten by salt-and-pepper noise at a given density.
std::size_t salt_pepper_count(double density, int width, int height) noexcept;

}  // namespace oodbench
