#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "oodbench/image.hpp"

namespace oodbench {

// Baseline sequential JPEG, 4:2:0 chroma subsampling, integer DCT.
std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality);

// Decodes JPEG bytes to RGB. Grayscale inputs are replicated to three channels.
Image decode_jpeg(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_png(const Image& img);

// Decodes PNG bytes to 8-bit RGB (palette, gray, alpha and 16-bit are converted).
Image decode_png(std::span<const std::uint8_t> bytes);

// Decodes a grayscale PNG to a single-channel image in [0, 1].
FloatImage decode_png_gray(std::span<const std::uint8_t> bytes);

// Sniffs the signature and dispatches to the PNG or JPEG decoder.
Image decode_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Image read_image(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img);

}  // namespace oodbench
