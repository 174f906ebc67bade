#include "oodbench/plasma.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "oodbench/error.hpp"

namespace oodbench {

FloatImage plasma_fractal(int size, double wibble_decay, Prng& rng) {
  if (size < 1) {
    throw Error(ErrorCategory::invalid_size, "plasma size must be positive");
  }
  if (!(wibble_decay > 0.0)) {
    throw Error(ErrorCategory::parameter, "plasma wibble decay must be positive");
  }
  int cells = 1;
  while (cells + 1 < size) cells *= 2;
  const int n = cells + 1;
  std::vector<double> grid(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int x, int y) -> double& { return grid[static_cast<std::size_t>(y) * n + x]; };

  double amplitude = 1.0;
  at(0, 0) = rng.uniform(-amplitude, amplitude);
  at(cells, 0) = rng.uniform(-amplitude, amplitude);
  at(0, cells) = rng.uniform(-amplitude, amplitude);
  at(cells, cells) = rng.uniform(-amplitude, amplitude);

  for (int step = cells; step >= 2; step /= 2) {
    const int half = step / 2;
    // square step: centers of each step x step cell
    for (int y = half; y < n; y += step)
      for (int x = half; x < n; x += step) {
        const double mean = (at(x - half, y - half) + at(x + half, y - half) +
                             at(x - half, y + half) + at(x + half, y + half)) /
                            4.0;
        at(x, y) = mean + rng.uniform(-amplitude, amplitude);
      }
    // diamond step: edge midpoints, averaging the neighbours that exist
    for (int y = 0; y < n; y += half)
      for (int x = ((y / half) % 2 == 0) ? half : 0; x < n; x += step) {
        double total = 0.0;
        int count = 0;
        if (x - half >= 0) { total += at(x - half, y); ++count; }
        if (x + half < n) { total += at(x + half, y); ++count; }
        if (y - half >= 0) { total += at(x, y - half); ++count; }
        if (y + half < n) { total += at(x, y + half); ++count; }
        at(x, y) = total / count + rng.uniform(-amplitude, amplitude);
      }
    amplitude /= wibble_decay;
  }

  FloatImage out(size, size, 1);
  double lo = at(0, 0);
  double hi = lo;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      lo = std::min(lo, at(x, y));
      hi = std::max(hi, at(x, y));
    }
  const double range = hi - lo;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) out.at(x, y) = range > 0.0 ? (at(x, y) - lo) / range : 0.0;
  return out;
}

}  // namespace oodbench
