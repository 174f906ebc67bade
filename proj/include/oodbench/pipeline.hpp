#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodbench/corruption_kind.hpp"

namespace oodbench {

inline constexpr std::string_view kToolVersion = "oodbench 1.0.0 (png-lossless outputs)";

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

struct SeedSpec {
  std::uint64_t master_seed = 0;
};

// fnv1a64("<relative_path>|<kind>|<level>") XOR master_seed
std::uint64_t derive_seed(const SeedSpec& spec, std::string_view relative_path,
                          CorruptionKind kind, Severity level);

struct ManifestEntry {
  std::string relative_path;
  // Empty kind marks an image that could not be decoded.
  std::string kind;
  int level = 0;
  std::uint64_t derived_seed = 0;
  std::string output_path;
  std::uint64_t content_digest = 0;
  bool skipped = false;
  std::string reason;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::string dataset_name;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::vector<ManifestEntry> entries;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// Stable JSON: sorted keys, two-space indent, LF line endings, trailing LF.
std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(std::string_view text);

struct CorruptOptions {
  std::filesystem::path input_root;
  std::filesystem::path output_root;
  std::vector<CorruptionKind> kinds;
  std::vector<int> levels;
  SeedSpec seed;
  unsigned jobs = 1;
  std::string dataset_name;  // defaults to the input directory name
};

// Corrupts every PNG/JPEG under input_root for each (kind, level), writing
// <output_root>/<kind>/<level>/<relative path with .png extension> and
// <output_root>/manifest.json. Undecodable images become skipped entries.
// Outputs and the manifest are independent of `jobs`.
Manifest corrupt_dataset(const CorruptOptions& options);

// Relative paths (generic form, '/' separated) of candidate images, sorted.
std::vector<std::string> list_images(const std::filesystem::path& root);

}  // namespace oodbench
