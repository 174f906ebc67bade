#include "oodbench/params.hpp"

#include <array>
#include <initializer_list>

#include "oodbench/error.hpp"

namespace oodbench {

namespace {

using Row = std::vector<double>;

struct Table {
  std::vector<std::string> names;
  std::array<Row, kSeverityLevels> rows;
};

// One column per named parameter, one row per severity level 1..5.
const Table& table_for(CorruptionKind kind) {
  static const std::array<Table, kCorruptionKindCount> tables{{
      // brightness: additive shift of the HSV value channel
      {{"shift"}, {{{0.1}, {0.2}, {0.3}, {0.4}, {0.5}}}},
      // contrast: scale of the deviation from the channel mean
      {{"factor"}, {{{0.4}, {0.3}, {0.2}, {0.1}, {0.05}}}},
      // saturate: S' = S * scale + offset
      {{"scale", "offset"},
       {{{0.3, 0.0}, {0.1, 0.0}, {2.0, 0.0}, {5.0, 0.1}, {20.0, 0.2}}}},
      // fog
      {{"amount", "wibble_decay"},
       {{{1.5, 2.0}, {2.0, 2.0}, {2.5, 1.7}, {2.5, 1.5}, {3.0, 1.4}}}},
      // snow
      {{"loc", "scale", "zoom", "threshold", "blur_radius", "blur_sigma", "mix"},
       {{{0.1, 0.3, 3.0, 0.5, 10.0, 4.0, 0.8},
         {0.2, 0.3, 2.0, 0.5, 12.0, 4.0, 0.7},
         {0.55, 0.3, 4.0, 0.9, 12.0, 8.0, 0.7},
         {0.55, 0.3, 4.5, 0.85, 12.0, 8.0, 0.65},
         {0.55, 0.3, 2.5, 0.85, 12.0, 12.0, 0.55}}}},
      // defocus_blur
      {{"radius", "alias_blur"},
       {{{3.0, 0.1}, {4.0, 0.5}, {6.0, 0.5}, {8.0, 0.5}, {10.0, 0.5}}}},
      // color_shift: maximum hue shift on the 0-180 scale
      {{"max_hue_shift"}, {{{0.0}, {7.0}, {14.0}, {21.0}, {28.0}}}},
      // pixelate: downscale factor
      {{"scale"}, {{{0.6}, {0.5}, {0.4}, {0.3}, {0.25}}}},
      // motion_blur
      {{"radius", "sigma"},
       {{{10.0, 3.0}, {15.0, 5.0}, {15.0, 8.0}, {15.0, 12.0}, {20.0, 15.0}}}},
      // zoom_blur: factors zoom_start, +0.01, ... strictly below zoom_max
      {{"zoom_start", "zoom_max", "zoom_step"},
       {{{1.01, 1.11, 0.01},
         {1.01, 1.16, 0.01},
         {1.01, 1.21, 0.01},
         {1.01, 1.26, 0.01},
         {1.01, 1.31, 0.01}}}},
      // facial_distortion: displacement magnitude relative to min(H, W)
      {{"magnitude"}, {{{0.05}, {0.065}, {0.085}, {0.1}, {0.12}}}},
      // gaussian_noise
      {{"sigma"}, {{{0.08}, {0.12}, {0.18}, {0.26}, {0.38}}}},
      // impulse_noise: fraction of samples replaced
      {{"amount"}, {{{0.03}, {0.06}, {0.09}, {0.17}, {0.27}}}},
      // shot_noise: photon count scale
      {{"lambda"}, {{{60.0}, {25.0}, {12.0}, {5.0}, {3.0}}}},
      // speckle_noise
      {{"sigma"}, {{{0.15}, {0.2}, {0.35}, {0.45}, {0.6}}}},
      // salt_pepper_noise: fraction of pixels
      {{"density"}, {{{0.0001}, {0.0005}, {0.001}, {0.002}, {0.005}}}},
      // jpeg_compression
      {{"quality"}, {{{25.0}, {18.0}, {15.0}, {10.0}, {7.0}}}},
      // random_occlusion: target occluded area fraction
      {{"area"}, {{{0.05}, {0.10}, {0.15}, {0.20}, {0.25}}}},
      // frost
      {{"image_weight", "frost_weight"},
       {{{1.0, 0.4}, {0.8, 0.6}, {0.7, 0.7}, {0.65, 0.7}, {0.6, 0.75}}}},
      // spatter: mode 0 = water, 1 = mud
      {{"loc", "scale", "sigma", "threshold", "multiplier", "mode"},
       {{{0.65, 0.3, 4.0, 0.69, 0.6, 0.0},
         {0.65, 0.3, 3.0, 0.68, 0.6, 0.0},
         {0.65, 0.3, 2.0, 0.68, 0.5, 0.0},
         {0.65, 0.3, 1.0, 0.65, 1.5, 1.0},
         {0.67, 0.4, 1.0, 0.65, 1.5, 1.0}}}},
  }};
  return tables[static_cast<std::size_t>(kind)];
}

}  // namespace

double ParamSet::get(std::string_view name) const {
  for (const auto& v : values)
    if (v.name == name) return v.value;
  throw Error(ErrorCategory::parameter, "parameter '" + std::string(name) +
                                            "' is not defined for " +
                                            std::string(to_string(kind)));
}

ParamSet severity_params(CorruptionKind kind, Severity level) {
  const Table& table = table_for(kind);
  const Row& row = table.rows[level.index()];
  ParamSet out{kind, level, {}};
  out.values.reserve(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out.values.push_back({table.names[i], row[i]});
  return out;
}

ParamSet severity_params(CorruptionKind kind, int level) {
  return severity_params(kind, Severity(level));
}

std::vector<std::string> param_names(CorruptionKind kind) { return table_for(kind).names; }

}  // namespace oodbench
