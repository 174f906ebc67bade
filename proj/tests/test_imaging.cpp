#include <doctest.h>

#include <cmath>
#include <random>

#include "oodbench/codec.hpp"
#include "oodbench/color.hpp"
#include "oodbench/error.hpp"
#include "oodbench/filter.hpp"
#include "oodbench/image.hpp"
#include "oodbench/plasma.hpp"
#include "oodbench/random.hpp"
#include "test_support.hpp"

using namespace oodbench;

namespace {

ErrorCategory category_of_throw(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an oodbench::Error");
  return ErrorCategory::io;
}

FloatImage ramp(int w, int h, auto&& value) {
  FloatImage f(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.at(x, y) = value(x, y);
  return f;
}

}  // namespace

TEST_SUITE("image") {
  TEST_CASE("construction enforces size and length") {
    CHECK(category_of_throw([] { Image(0, 4); }) == ErrorCategory::invalid_size);
    CHECK(category_of_throw([] { Image(4, -1); }) == ErrorCategory::invalid_size);
    CHECK(category_of_throw([] { Image(2, 2, std::vector<std::uint8_t>(11)); }) == ErrorCategory::shape);
    const Image img(3, 2);
    CHECK(img.size() == 18);
  }

  TEST_CASE("byte/float conversion endpoints and clamping") {
    Image img(2, 1, {255, 255, 255, 0, 0, 0});
    const FloatImage f = to_float(img);
    CHECK(f.at(0, 0, 0) == 1.0);
    CHECK(f.at(1, 0, 2) == 0.0);
    CHECK(from_float(f) == img);
    CHECK(to_byte(1.7) == 255);
    CHECK(to_byte(-0.2) == 0);
    CHECK(to_byte(std::nan("")) == 0);
    // 127.5 rounds away from zero
    CHECK(to_byte(127.5 / 255.0) == 128);
  }

  TEST_CASE("round trip is the identity on every byte value") {
    std::vector<std::uint8_t> bytes(256 * 3);
    for (int i = 0; i < 256 * 3; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i / 3);
    const Image img(256, 1, bytes);
    CHECK(from_float(to_float(img)) == img);
  }
}

TEST_SUITE("prng") {
  TEST_CASE("stream matches the reference PCG32/SplitMix64 construction") {
    Prng rng(42);
    CHECK(rng.next_u32() == 0xd11dd51fu);
    CHECK(rng.next_u32() == 0xa9b04c45u);
    CHECK(rng.next_u32() == 0xb5d97aa9u);
    CHECK(rng.next_u32() == 0xa9eab6ceu);
    Prng zero(0);
    CHECK(zero.next_u32() == 0x90644221u);
    CHECK(zero.next_u32() == 0x4618e85fu);
    Prng u(42);
    CHECK(u.uniform() == 0.8168614580442305);
  }

  TEST_CASE("identical seeds give identical streams, distinct seeds diverge") {
    Prng a(7), b(7), c(8);
    int same = 0;
    for (int i = 0; i < 100; ++i) {
      const double x = a.normal();
      CHECK(x == b.normal());
      same += x == c.normal() ? 1 : 0;
    }
    CHECK(same < 3);
  }

  TEST_CASE("below stays in range and covers it") {
    Prng rng(3);
    std::array<int, 7> hits{};
    for (int i = 0; i < 7000; ++i) {
      const auto v = rng.below(7);
      REQUIRE(v < 7);
      ++hits[v];
    }
    for (int h : hits) CHECK(h > 800);
    CHECK(rng.below(1) == 0);
  }

  TEST_CASE("normal and poisson moments") {
    Prng rng(11);
    const int n = 200000;
    double s = 0, s2 = 0, p = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      s += x;
      s2 += x * x;
      p += static_cast<double>(rng.poisson(4.5));
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
    CHECK(std::abs(p / n - 4.5) < 0.03);
    CHECK(rng.poisson(0.0) == 0);
  }

  TEST_CASE("uniform lies in [0, 1)") {
    Prng rng(5);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
    }
  }
}

TEST_SUITE("color") {
  TEST_CASE("reference colors") {
    const Hsv red = rgb_to_hsv(Rgb{1, 0, 0});
    CHECK(red.h == 0.0);
    CHECK(red.s == 1.0);
    CHECK(red.v == 1.0);
    const Hsv gray = rgb_to_hsv(Rgb{0.5, 0.5, 0.5});
    CHECK(gray.h == 0.0);
    CHECK(gray.s == 0.0);
    CHECK(gray.v == 0.5);
    CHECK(rgb_to_hsv(Rgb{0, 1, 0}).h == doctest::Approx(60.0));
    CHECK(rgb_to_hsv(Rgb{0, 0, 1}).h == doctest::Approx(120.0));
  }

  TEST_CASE("round trip over 10k random colors stays within 1e-6") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const Rgb in{unit(gen), unit(gen), unit(gen)};
      const Hsv hsv = rgb_to_hsv(in);
      REQUIRE(hsv.h >= 0.0);
      REQUIRE(hsv.h < kHueRange);
      const Rgb out = hsv_to_rgb(hsv);
      worst = std::max({worst, std::abs(out.r - in.r), std::abs(out.g - in.g), std::abs(out.b - in.b)});
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("gray conversion uses BT.601 weights") {
    FloatImage f(1, 1);
    f.at(0, 0, 0) = 1.0;
    CHECK(to_gray(f).at(0, 0) == doctest::Approx(0.299));
  }
}

TEST_SUITE("filter") {
  TEST_CASE("reflect index") {
    CHECK(reflect_index(-1, 4) == 0);
    CHECK(reflect_index(-2, 4) == 1);
    CHECK(reflect_index(4, 4) == 3);
    CHECK(reflect_index(5, 4) == 2);
    CHECK(reflect_index(9, 4) == 1);
    CHECK(reflect_index(-7, 1) == 0);
  }

  TEST_CASE("convolve: identity, constants and kernel validation") {
    const Image face = testing::reference_face(24);
    const FloatImage f = to_float(face);
    CHECK(convolve(f, Kernel(1, 1, std::vector<double>{1.0})) == f);

    const FloatImage flat(9, 7, 3, 0.3125);
    Kernel k(5, 3, 1.0);
    k.normalize();
    const FloatImage smoothed = convolve(flat, k);
    for (double v : smoothed.data()) CHECK(v == doctest::Approx(0.3125).epsilon(1e-15));

    CHECK(category_of_throw([&] { convolve(f, Kernel(2, 3, 1.0 / 6)); }) == ErrorCategory::invalid_kernel);
    CHECK(category_of_throw([&] { convolve(f, Kernel(3, 3, 1.0)); }) == ErrorCategory::invalid_kernel);
  }

  TEST_CASE("3x3 box on a 5x5 ramp matches the hand oracle") {
    const FloatImage f = ramp(5, 5, [](int x, int y) { return (x + 5.0 * y) / 24.0; });
    Kernel box(3, 3, 1.0 / 9.0);
    const FloatImage g = convolve(f, box);
    // Corner (0,0) with symmetric reflection sees rows {0,0,1} and columns {0,0,1}:
    // mean of x-terms (0+0+1)/3 and y-terms 5*(0+0+1)/3 gives 2/24.
    CHECK(g.at(0, 0) == doctest::Approx(2.0 / 24.0).epsilon(1e-12));
    // A linear ramp is reproduced exactly in the interior.
    for (int y = 1; y < 4; ++y)
      for (int x = 1; x < 4; ++x) CHECK(g.at(x, y) == doctest::Approx(f.at(x, y)).epsilon(1e-12));
    // Opposite corner: columns and rows {3, 4, 4}.
    CHECK(g.at(4, 4) == doctest::Approx(22.0 / 24.0).epsilon(1e-12));
  }

  TEST_CASE("gaussian kernel") {
    CHECK(gaussian_kernel_1d(0.0) == std::vector<double>{1.0});
    const auto k = gaussian_kernel_1d(1.0);
    CHECK(k.size() == 9);
    double sum = 0;
    for (double v : k) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k[4] > k[3]);
    CHECK(k[3] == doctest::Approx(k[5]));
  }

  TEST_CASE("resize") {
    const FloatImage face = to_float(testing::reference_face(16));
    for (auto filter : {ResizeFilter::box, ResizeFilter::bilinear, ResizeFilter::nearest}) {
      const FloatImage same = resize(face, 16, 16, filter);
      for (std::size_t i = 0; i < same.size(); ++i)
        REQUIRE(same.data()[i] == doctest::Approx(face.data()[i]).epsilon(1e-12));
    }
    FloatImage checker(2, 2, 1);
    checker.at(1, 0) = 1.0;
    checker.at(0, 1) = 1.0;
    CHECK(resize(checker, 1, 1, ResizeFilter::box).at(0, 0) == doctest::Approx(0.5));

    const FloatImage r = ramp(4, 4, [](int x, int y) { return x + 4.0 * y; });
    const FloatImage half = resize(r, 2, 2, ResizeFilter::bilinear);
    CHECK(half.at(0, 0) == doctest::Approx(2.5));
    CHECK(half.at(1, 0) == doctest::Approx(4.5));
    CHECK(half.at(0, 1) == doctest::Approx(10.5));
    CHECK(half.at(1, 1) == doctest::Approx(12.5));

    const FloatImage flat(10, 10, 3, 0.7);
    const FloatImage shrunk = resize(flat, 3, 7, ResizeFilter::box);
    for (double v : shrunk.data()) CHECK(v == doctest::Approx(0.7));

    CHECK(category_of_throw([&] { resize(flat, 0, 3, ResizeFilter::box); }) == ErrorCategory::invalid_size);
  }

  TEST_CASE("remap") {
    const FloatImage f = ramp(8, 6, [](int x, int y) { return (x + 2.0 * y) / 30.0; });
    const FloatImage zero(8, 6, 1, 0.0);
    CHECK(remap(f, zero, zero) == f);

    const FloatImage one(8, 6, 1, 1.0);
    const FloatImage shifted = remap(f, one, zero);
    for (int y = 0; y < 6; ++y) {
      for (int x = 0; x < 7; ++x) CHECK(shifted.at(x, y) == doctest::Approx(f.at(x + 1, y)));
      CHECK(shifted.at(7, y) == doctest::Approx(f.at(7, y)));
    }

    FloatImage dx(8, 6, 1), dy(8, 6, 1);
    for (int y = 0; y < 6; ++y)
      for (int x = 0; x < 8; ++x) {
        dx.at(x, y) = 0.5 * std::sin(y);
        dy.at(x, y) = 0.3 * std::cos(x);
      }
    const FloatImage warped = remap(f, dx, dy);
    CHECK(warped.at(0, 0) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(warped.at(3, 2) == doctest::Approx(0.2286884405150858).epsilon(1e-12));
    CHECK(warped.at(7, 5) == doctest::Approx(0.550684595422281).epsilon(1e-12));
    CHECK(warped.at(5, 1) == doctest::Approx(0.2530310934560628).epsilon(1e-12));

    CHECK(category_of_throw([&] { remap(f, FloatImage(7, 6, 1), zero); }) == ErrorCategory::shape);
  }

  TEST_CASE("zoom and rotation") {
    const FloatImage f = to_float(testing::reference_face(20));
    const FloatImage z = zoom_about_center(f, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(z.data()[i] == doctest::Approx(f.data()[i]));
    CHECK(rotate180(rotate180(f)) == f);
    CHECK(rotate180(f).at(0, 0, 1) == f.at(19, 19, 1));
  }
}

TEST_SUITE("plasma") {
  double mean_abs_laplacian(const FloatImage& m) {
    double total = 0.0;
    int count = 0;
    for (int y = 1; y + 1 < m.height(); ++y)
      for (int x = 1; x + 1 < m.width(); ++x) {
        total += std::abs(4 * m.at(x, y) - m.at(x - 1, y) - m.at(x + 1, y) - m.at(x, y - 1) - m.at(x, y + 1));
        ++count;
      }
    return total / count;
  }

  TEST_CASE("normalized, deterministic, cropped") {
    Prng a(9), b(9);
    const FloatImage m = plasma_fractal(112, 2.0, a);
    CHECK(m.width() == 112);
    CHECK(m.height() == 112);
    CHECK(m.channels() == 1);
    const auto [lo, hi] = std::minmax_element(m.data().begin(), m.data().end());
    CHECK(*lo == 0.0);
    CHECK(*hi == 1.0);
    CHECK(plasma_fractal(112, 2.0, b) == m);
  }

  TEST_CASE("larger decay gives a smoother map") {
    double smooth = 0.0, rough = 0.0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Prng a(seed), b(seed);
      smooth += mean_abs_laplacian(plasma_fractal(128, 2.0, a));
      rough += mean_abs_laplacian(plasma_fractal(128, 1.4, b));
    }
    CHECK(smooth < rough);
  }

  TEST_CASE("argument validation") {
    Prng rng(1);
    CHECK(category_of_throw([&] { plasma_fractal(0, 2.0, rng); }) == ErrorCategory::invalid_size);
    CHECK(category_of_throw([&] { plasma_fractal(8, 0.0, rng); }) == ErrorCategory::parameter);
  }
}

TEST_SUITE("codec") {
  double psnr(const Image& a, const Image& b) {
    double se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = double(a.data()[i]) - double(b.data()[i]);
      se += d * d;
    }
    const double mse = se / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
  }

  TEST_CASE("png round trip is lossless") {
    const Image face = testing::reference_face(37);
    CHECK(decode_png(encode_png(face)) == face);
    CHECK(decode_image(encode_png(face)) == face);
  }

  TEST_CASE("jpeg quality ordering and determinism") {
    const Image face = testing::reference_face();
    const auto q25 = encode_jpeg(face, 25);
    CHECK(encode_jpeg(face, 25) == q25);
    const Image d25 = decode_jpeg(q25);
    const Image d7 = decode_image(encode_jpeg(face, 7));
    CHECK(d25.width() == 112);
    CHECK(psnr(face, d25) > psnr(face, d7));
  }

  TEST_CASE("garbage is a format error") {
    const std::vector<std::uint8_t> junk{1, 2, 3, 4, 5};
    CHECK(category_of_throw([&] { decode_image(junk); }) == ErrorCategory::format);
    const std::vector<std::uint8_t> bad_png{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n', 0, 0};
    CHECK_THROWS_AS(decode_image(bad_png), Error);
  }

  TEST_CASE("file helpers") {
    testing::TempDir dir;
    const Image face = testing::reference_face(12);
    write_png(dir / "x.png", face);
    CHECK(read_image(dir / "x.png") == face);
    CHECK(category_of_throw([&] { read_file(dir / "missing.png"); }) == ErrorCategory::io);
  }
}
