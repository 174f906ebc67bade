#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oodbench {

enum class CorruptionKind {
  brightness,
  contrast,
  saturate,
  fog,
  snow,
  defocus_blur,
  color_shift,
  pixelate,
  motion_blur,
  zoom_blur,
  facial_distortion,
  gaussian_noise,
  impulse_noise,
  shot_noise,
  speckle_noise,
  salt_pepper_noise,
  jpeg_compression,
  random_occlusion,
  frost,
  spatter,
};

inline constexpr std::size_t kCorruptionKindCount = 20;
inline constexpr int kSeverityLevels = 5;

enum class CorruptionCategory {
  lighting_weather,
  sensor,
  movement,
  data_processing,
  occlusion,
};

inline constexpr std::size_t kCorruptionCategoryCount = 5;

// All kinds in category order (the row order of the benchmark tables).
std::span<const CorruptionKind> all_corruption_kinds() noexcept;
std::span<const CorruptionCategory> all_corruption_categories() noexcept;

std::string_view to_string(CorruptionKind kind) noexcept;
std::string_view to_string(CorruptionCategory category) noexcept;
std::string_view display_name(CorruptionKind kind) noexcept;
std::string_view display_name(CorruptionCategory category) noexcept;

std::optional<CorruptionKind> parse_corruption_kind(std::string_view name) noexcept;

// Throws Error(unknown_kind) for unrecognized names.
CorruptionKind corruption_kind_from_string(std::string_view name);

CorruptionCategory category_of(CorruptionKind kind) noexcept;
std::vector<CorruptionKind> members_of(CorruptionCategory category);

// Severity level in [1, 5].
class Severity {
 public:
  explicit Severity(int level);
  int level() const noexcept { return level_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(level_ - 1); }
  friend auto operator<=>(const Severity&, const Severity&) = default;

 private:
  int level_;
};

// A named category of grid kinds. Used for both the corruption taxonomy and
// the appearance-variation taxonomy.
struct TaxonomyGroup {
  std::string name;
  std::string display;
  std::vector<std::string> members;
};

using Taxonomy = std::vector<TaxonomyGroup>;

const Taxonomy& corruption_taxonomy();

// The ten appearance variations and their four groups.
const Taxonomy& variation_taxonomy();
std::vector<std::string> variation_kind_names();
std::vector<std::string> corruption_kind_names();
std::string variation_display_name(std::string_view name);

}  // namespace oodbench
