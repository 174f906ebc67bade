#include "oodbench/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "oodbench/codec.hpp"
#include "oodbench/corruptions.hpp"
#include "oodbench/error.hpp"

namespace oodbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  return fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::uint64_t derive_seed(const SeedSpec& spec, std::string_view relative_path, CorruptionKind kind,
                          Severity level) {
  if (relative_path.empty()) {
    throw Error(ErrorCategory::parameter, "seed derivation needs a non-empty relative path");
  }
  std::string key;
  key.reserve(relative_path.size() + 32);
  key.append(relative_path);
  key.push_back('|');
  key.append(to_string(kind));
  key.push_back('|');
  key.append(std::to_string(level.level()));
  return fnv1a64(key) ^ spec.master_seed;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used, 16);
  if (used != s.size()) throw Error(ErrorCategory::parse, "bad digest '" + s + "'");
  return v;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_image_extension(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::string output_relative(const std::string& relative_path, CorruptionKind kind, int level) {
  fs::path rel(relative_path);
  rel.replace_extension(".png");
  return (fs::path(std::string(to_string(kind))) / std::to_string(level) / rel).generic_string();
}

bool entry_less(const ManifestEntry& a, const ManifestEntry& b) {
  return std::tie(a.relative_path, a.kind, a.level) < std::tie(b.relative_path, b.kind, b.level);
}

void write_atomically(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  write_file(tmp, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCategory::io, "cannot move manifest into place: " + ec.message());
}

struct Source {
  std::string relative_path;
  std::optional<Image> image;
  std::string reason;
};

struct Task {
  std::size_t source;
  CorruptionKind kind;
  int level;
};

}  // namespace

std::string manifest_to_json(const Manifest& m) {
  json entries = json::array();
  for (const auto& e : m.entries) {
    json j;
    j["relative_path"] = e.relative_path;
    if (e.skipped) {
      j["status"] = "skipped";
      j["reason"] = e.reason;
    } else {
      j["status"] = "ok";
      j["kind"] = e.kind;
      j["level"] = e.level;
      j["derived_seed"] = e.derived_seed;
      j["output_path"] = e.output_path;
      j["content_digest"] = hex64(e.content_digest);
    }
    entries.push_back(std::move(j));
  }
  json doc;
  doc["dataset_name"] = m.dataset_name;
  doc["master_seed"] = m.master_seed;
  doc["tool_version"] = m.tool_version;
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

Manifest manifest_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::parse, std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    Manifest m;
    m.dataset_name = doc.at("dataset_name").get<std::string>();
    m.master_seed = doc.at("master_seed").get<std::uint64_t>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    for (const auto& j : doc.at("entries")) {
      ManifestEntry e;
      e.relative_path = j.at("relative_path").get<std::string>();
      if (j.at("status").get<std::string>() == "skipped") {
        e.skipped = true;
        e.reason = j.at("reason").get<std::string>();
      } else {
        e.kind = j.at("kind").get<std::string>();
        e.level = j.at("level").get<int>();
        e.derived_seed = j.at("derived_seed").get<std::uint64_t>();
        e.output_path = j.at("output_path").get<std::string>();
        e.content_digest = parse_hex64(j.at("content_digest").get<std::string>());
      }
      m.entries.push_back(std::move(e));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::parse, std::string("manifest schema mismatch: ") + e.what());
  }
}

std::vector<std::string> list_images(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCategory::io, "input directory " + root.string() + " does not exist");
  }
  std::vector<std::string> out;
  for (auto it = fs::recursive_directory_iterator(root, ec); it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (ec) throw Error(ErrorCategory::io, "cannot walk " + root.string() + ": " + ec.message());
    if (it->is_regular_file() && is_image_extension(it->path())) {
      out.push_back(fs::relative(it->path(), root).generic_string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Manifest corrupt_dataset(const CorruptOptions& options) {
  if (options.kinds.empty() || options.levels.empty()) {
    throw Error(ErrorCategory::parameter, "at least one kind and one level are required");
  }
  for (int level : options.levels) (void)Severity(level);

  std::error_code ec;
  fs::create_directories(options.output_root, ec);
  if (ec) {
    throw Error(ErrorCategory::io,
                "cannot create output directory " + options.output_root.string() + ": " + ec.message());
  }

  // Skip anything already inside the output tree when it is nested in the input.
  const fs::path output_canonical = fs::weakly_canonical(options.output_root);
  std::vector<Source> sources;
  for (auto& rel : list_images(options.input_root)) {
    const fs::path full = options.input_root / rel;
    const fs::path canon = fs::weakly_canonical(full);
    const auto mismatch = std::mismatch(output_canonical.begin(), output_canonical.end(), canon.begin(), canon.end());
    if (mismatch.first == output_canonical.end()) continue;
    Source s{rel, std::nullopt, {}};
    try {
      s.image = read_image(full);
    } catch (const Error& e) {
      if (e.category() == ErrorCategory::io) throw;
      s.reason = e.what();
    }
    sources.push_back(std::move(s));
  }
  const bool any_decodable = std::any_of(sources.begin(), sources.end(),
                                         [](const Source& s) { return s.image.has_value(); });
  if (!any_decodable) {
    throw Error(ErrorCategory::empty_input,
                "no decodable images under " + options.input_root.string());
  }

  const bool needs_frost =
      std::find(options.kinds.begin(), options.kinds.end(), CorruptionKind::frost) != options.kinds.end();
  const auto frost_assets = needs_frost ? default_frost_textures() : std::make_shared<const FrostTextureSet>();

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!sources[i].image) continue;
    for (CorruptionKind kind : options.kinds)
      for (int level : options.levels) tasks.push_back({i, kind, level});
  }
  for (const Task& t : tasks) {
    const fs::path target =
        options.output_root / output_relative(sources[t.source].relative_path, t.kind, t.level);
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error(ErrorCategory::io, "cannot create " + target.parent_path().string());
  }

  std::vector<std::optional<ManifestEntry>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      const Task& task = tasks[index];
      const Source& src = sources[task.source];
      try {
        const Severity level(task.level);
        ManifestEntry entry;
        entry.relative_path = src.relative_path;
        entry.kind = std::string(to_string(task.kind));
        entry.level = task.level;
        entry.derived_seed = derive_seed(options.seed, src.relative_path, task.kind, level);
        entry.output_path = output_relative(src.relative_path, task.kind, task.level);
        const Image out =
            apply_corruption(*src.image, task.kind, level, entry.derived_seed, *frost_assets);
        const auto bytes = encode_png(out);
        entry.content_digest = fnv1a64(bytes);
        write_file(options.output_root / entry.output_path, bytes);
        results[index] = std::move(entry);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }

  Manifest manifest;
  manifest.dataset_name = options.dataset_name.empty()
                              ? fs::weakly_canonical(options.input_root).filename().string()
                              : options.dataset_name;
  manifest.master_seed = options.seed.master_seed;
  manifest.tool_version = std::string(kToolVersion);
  for (const Source& s : sources) {
    if (!s.image) {
      ManifestEntry e;
      e.relative_path = s.relative_path;
      e.skipped = true;
      e.reason = s.reason;
      manifest.entries.push_back(std::move(e));
    }
  }
  for (auto& r : results)
    if (r) manifest.entries.push_back(std::move(*r));
  std::sort(manifest.entries.begin(), manifest.entries.end(), entry_less);

  if (first_error) {
    const fs::path partial = options.output_root / "manifest.partial.json";
    std::string cause;
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      cause = e.what();
    }
    try {
      write_atomically(partial, manifest_to_json(manifest));
    } catch (const Error&) {
      throw Error(ErrorCategory::partial_manifest, cause + " (partial manifest could not be written)");
    }
    throw Error(ErrorCategory::partial_manifest,
                cause + " (partial manifest written to " + partial.string() + ")");
  }

  write_atomically(options.output_root / "manifest.json", manifest_to_json(manifest));
  return manifest;
}

}  // namespace oodbench
