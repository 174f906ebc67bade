#include "oodbench/corruption_kind.hpp"

#include <string>

#include "oodbench/error.hpp"

namespace oodbench {

namespace {

struct KindInfo {
  CorruptionKind kind;
  std::string_view name;
  std::string_view display;
  CorruptionCategory category;
};

constexpr std::array<KindInfo, kCorruptionKindCount> kKinds{{
    {CorruptionKind::brightness, "brightness", "Brightness", CorruptionCategory::lighting_weather},
    {CorruptionKind::contrast, "contrast", "Contrast", CorruptionCategory::lighting_weather},
    {CorruptionKind::saturate, "saturate", "Saturate", CorruptionCategory::lighting_weather},
    {CorruptionKind::fog, "fog", "Fog", CorruptionCategory::lighting_weather},
    {CorruptionKind::snow, "snow", "Snow", CorruptionCategory::lighting_weather},
    {CorruptionKind::defocus_blur, "defocus_blur", "Defocus Blur", CorruptionCategory::sensor},
    {CorruptionKind::color_shift, "color_shift", "Color Shift", CorruptionCategory::sensor},
    {CorruptionKind::pixelate, "pixelate", "Pixelate", CorruptionCategory::sensor},
    {CorruptionKind::motion_blur, "motion_blur", "Motion Blur", CorruptionCategory::movement},
    {CorruptionKind::zoom_blur, "zoom_blur", "Zoom Blur", CorruptionCategory::movement},
    {CorruptionKind::facial_distortion, "facial_distortion", "Facial Distortion",
     CorruptionCategory::movement},
    {CorruptionKind::gaussian_noise, "gaussian_noise", "Gaussian Noise",
     CorruptionCategory::data_processing},
    {CorruptionKind::impulse_noise, "impulse_noise", "Impulse Noise",
     CorruptionCategory::data_processing},
    {CorruptionKind::shot_noise, "shot_noise", "Shot Noise", CorruptionCategory::data_processing},
    {CorruptionKind::speckle_noise, "speckle_noise", "Speckle Noise",
     CorruptionCategory::data_processing},
    {CorruptionKind::salt_pepper_noise, "salt_pepper_noise", "Salt Pepper Noise",
     CorruptionCategory::data_processing},
    {CorruptionKind::jpeg_compression, "jpeg_compression", "Jpeg Compression",
     CorruptionCategory::data_processing},
    {CorruptionKind::random_occlusion, "random_occlusion", "Random Occlusion",
     CorruptionCategory::occlusion},
    {CorruptionKind::frost, "frost", "Frost", CorruptionCategory::occlusion},
    {CorruptionKind::spatter, "spatter", "Spatter", CorruptionCategory::occlusion},
}};

constexpr std::array<CorruptionKind, kCorruptionKindCount> kKindOrder = [] {
  std::array<CorruptionKind, kCorruptionKindCount> out{};
  for (std::size_t i = 0; i < kKinds.size(); ++i) out[i] = kKinds[i].kind;
  return out;
}();

constexpr std::array<CorruptionCategory, kCorruptionCategoryCount> kCategories{
    CorruptionCategory::lighting_weather, CorruptionCategory::sensor,
    CorruptionCategory::movement, CorruptionCategory::data_processing,
    CorruptionCategory::occlusion};

const KindInfo& info(CorruptionKind kind) noexcept {
  return kKinds[static_cast<std::size_t>(kind)];
}

}  // namespace

std::span<const CorruptionKind> all_corruption_kinds() noexcept { return kKindOrder; }

std::span<const CorruptionCategory> all_corruption_categories() noexcept {
  return kCategories;
}

std::string_view to_string(CorruptionKind kind) noexcept { return info(kind).name; }

std::string_view display_name(CorruptionKind kind) noexcept { return info(kind).display; }

std::string_view to_string(CorruptionCategory category) noexcept {
  switch (category) {
    case CorruptionCategory::lighting_weather: return "lighting_weather";
    case CorruptionCategory::sensor: return "sensor";
    case CorruptionCategory::movement: return "movement";
    case CorruptionCategory::data_processing: return "data_processing";
    case CorruptionCategory::occlusion: return "occlusion";
  }
  return "";
}

std::string_view display_name(CorruptionCategory category) noexcept {
  switch (category) {
    case CorruptionCategory::lighting_weather: return "Lighting & Weather";
    case CorruptionCategory::sensor: return "Sensor";
    case CorruptionCategory::movement: return "Movement";
    case CorruptionCategory::data_processing: return "Data & Processing";
    case CorruptionCategory::occlusion: return "Occlusion";
  }
  return "";
}

std::optional<CorruptionKind> parse_corruption_kind(std::string_view name) noexcept {
  for (const auto& k : kKinds)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

CorruptionKind corruption_kind_from_string(std::string_view name) {
  if (auto kind = parse_corruption_kind(name)) return *kind;
  throw Error(ErrorCategory::unknown_kind, "unknown corruption kind '" + std::string(name) + "'");
}

CorruptionCategory category_of(CorruptionKind kind) noexcept { return info(kind).category; }

std::vector<CorruptionKind> members_of(CorruptionCategory category) {
  std::vector<CorruptionKind> out;
  for (const auto& k : kKinds)
    if (k.category == category) out.push_back(k.kind);
  return out;
}

Severity::Severity(int level) : level_(level) {
  if (level < 1 || level > kSeverityLevels) {
    throw Error(ErrorCategory::invalid_severity,
                "severity level must be in [1, 5], got " + std::to_string(level));
  }
}

const Taxonomy& corruption_taxonomy() {
  static const Taxonomy taxonomy = [] {
    Taxonomy t;
    for (CorruptionCategory c : kCategories) {
      TaxonomyGroup group{std::string(to_string(c)), std::string(display_name(c)), {}};
      for (CorruptionKind k : members_of(c)) group.members.emplace_back(to_string(k));
      t.push_back(std::move(group));
    }
    return t;
  }();
  return taxonomy;
}

const Taxonomy& variation_taxonomy() {
  static const Taxonomy taxonomy{
      {"age", "Age", {"age-", "age+"}},
      {"facial_expression", "Facial Expression",
       {"mouth-close", "mouth-open", "eye-close", "eye-open"}},
      {"rotation", "Rotation", {"rotation-left", "rotation-right"}},
      {"accessories", "Accessories", {"bangs_glasses", "makeup"}},
  };
  return taxonomy;
}

std::vector<std::string> variation_kind_names() {
  std::vector<std::string> out;
  for (const auto& g : variation_taxonomy())
    for (const auto& m : g.members) out.push_back(m);
  return out;
}

std::vector<std::string> corruption_kind_names() {
  std::vector<std::string> out;
  for (CorruptionKind k : kKindOrder) out.emplace_back(to_string(k));
  return out;
}

std::string variation_display_name(std::string_view name) {
  if (name == "age-") return "Age-";
  if (name == "age+") return "Age+";
  if (name == "mouth-close") return "Mouth-close";
  if (name == "mouth-open") return "Mouth-open";
  if (name == "eye-close") return "Eye-close";
  if (name == "eye-open") return "Eye-open";
  if (name == "rotation-left") return "Rotation-left";
  if (name == "rotation-right") return "Rotation-right";
  if (name == "bangs_glasses") return "Bangs&Glasses";
  if (name == "makeup") return "Makeup";
  return std::string(name);
}

}  // namespace oodbench
