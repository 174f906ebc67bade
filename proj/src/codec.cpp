#include "oodbench/codec.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "oodbench/error.hpp"

namespace oodbench {

namespace {

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void on_jpeg_message(j_common_ptr) {}

// libjpeg reports errors through longjmp; no objects with destructors may be
// live between setjmp and the jpeg calls, so buffers are owned by the caller.
bool jpeg_compress_raw(const std::uint8_t* rgb, int width, int height, int quality,
                       unsigned char** out, unsigned long* out_size, char* message) {
  jpeg_compress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_jpeg_error;
  err.base.output_message = on_jpeg_message;
  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, out, out_size);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  cinfo.dct_method = JDCT_ISLOW;
  cinfo.optimize_coding = FALSE;
  // 4:2:0
  cinfo.comp_info[0].h_samp_factor = 2;
  cinfo.comp_info[0].v_samp_factor = 2;
  cinfo.comp_info[1].h_samp_factor = 1;
  cinfo.comp_info[1].v_samp_factor = 1;
  cinfo.comp_info[2].h_samp_factor = 1;
  cinfo.comp_info[2].v_samp_factor = 1;
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(rgb + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

// Two-phase decode: the header pass reports dimensions so the caller can
// allocate, then the pixel pass fills `rgb` (may be null on the first call).
bool jpeg_decompress_raw(const std::uint8_t* data, std::size_t size, int* width, int* height,
                         std::uint8_t* rgb, char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_jpeg_error;
  err.base.output_message = on_jpeg_message;
  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  cinfo.dct_method = JDCT_ISLOW;
  if (rgb == nullptr) {
    jpeg_calc_output_dimensions(&cinfo);
    *width = static_cast<int>(cinfo.output_width);
    *height = static_cast<int>(cinfo.output_height);
    jpeg_destroy_decompress(&cinfo);
    return true;
  }
  jpeg_start_decompress(&cinfo);
  const std::size_t stride = static_cast<std::size_t>(cinfo.output_width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCategory::parameter, "jpeg quality must be in [1, 100]");
  }
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  char message[JMSG_LENGTH_MAX] = {};
  const bool ok = jpeg_compress_raw(img.data().data(), img.width(), img.height(), quality,
                                    &buffer, &size, message);
  std::vector<std::uint8_t> out;
  if (ok) out.assign(buffer, buffer + size);
  std::free(buffer);
  if (!ok) throw Error(ErrorCategory::format, std::string("jpeg encode failed: ") + message);
  return out;
}

Image decode_jpeg(std::span<const std::uint8_t> bytes) {
  char message[JMSG_LENGTH_MAX] = {};
  int width = 0;
  int height = 0;
  if (!jpeg_decompress_raw(bytes.data(), bytes.size(), &width, &height, nullptr, message)) {
    throw Error(ErrorCategory::format, std::string("jpeg decode failed: ") + message);
  }
  Image img(width, height);
  if (!jpeg_decompress_raw(bytes.data(), bytes.size(), &width, &height, img.data().data(),
                           message)) {
    throw Error(ErrorCategory::format, std::string("jpeg decode failed: ") + message);
  }
  return img;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.data().data(), 0, nullptr)) {
    throw Error(ErrorCategory::format, std::string("png encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.data().data(), 0,
                                 nullptr)) {
    throw Error(ErrorCategory::format, std::string("png encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

namespace {

std::vector<std::uint8_t> png_decode_as(std::span<const std::uint8_t> bytes, png_uint_32 format,
                                        int& width, int& height) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCategory::format, std::string("png decode failed: ") + image.message);
  }
  image.format = format;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&image, &background, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCategory::format, std::string("png decode failed: ") + image.message);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return pixels;
}

}  // namespace

Image decode_png(std::span<const std::uint8_t> bytes) {
  int width = 0;
  int height = 0;
  auto pixels = png_decode_as(bytes, PNG_FORMAT_RGB, width, height);
  return Image(width, height, std::move(pixels));
}

FloatImage decode_png_gray(std::span<const std::uint8_t> bytes) {
  int width = 0;
  int height = 0;
  const auto pixels = png_decode_as(bytes, PNG_FORMAT_GRAY, width, height);
  FloatImage out(width, height, 1);
  auto dst = out.data();
  for (std::size_t i = 0; i < pixels.size(); ++i) dst[i] = pixels[i] / 255.0;
  return out;
}

Image decode_image(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kPng[] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (bytes.size() >= sizeof kPng && std::memcmp(bytes.data(), kPng, sizeof kPng) == 0) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff) {
    return decode_jpeg(bytes);
  }
  throw Error(ErrorCategory::format, "unrecognized image format (expected PNG or JPEG)");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCategory::io, "read failed for " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCategory::io, "write failed for " + path.string());
}

Image read_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

void write_png(const std::filesystem::path& path, const Image& img) {
  write_file(path, encode_png(img));
}

}  // namespace oodbench
