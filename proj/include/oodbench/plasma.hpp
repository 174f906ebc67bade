#pragma once

#include "oodbench/image.hpp"
#include "oodbench/random.hpp"

namespace oodbench {

// Diamond-square heightmap on a (2^k + 1) grid, cropped to size x size and
// normalized to [0, 1]. The perturbation amplitude starts at 1 and is divided
// by `wibble_decay` after every square+diamond pass, so larger decays give
// smoother maps. Draws from `rng` in row-major order within each pass.
FloatImage plasma_fractal(int size, double wibble_decay, Prng& rng);

}  // namespace oodbench
