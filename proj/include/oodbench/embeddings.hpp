#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oodbench {

// Vectors of a common dimension keyed by image id, kept in insertion order.
class EmbeddingSet {
 public:
  explicit EmbeddingSet(std::uint32_t dim);

  std::uint32_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  // Throws on a duplicate id, a length mismatch or a non-finite component.
  void add(std::string id, std::span<const float> values);

  bool contains(std::string_view id) const;
  // Empty span when the id is absent.
  std::span<const float> find(std::string_view id) const;
  std::span<const float> at(std::size_t index) const;

 private:
  std::uint32_t dim_;
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// OODEMB01 layout (all integers little-endian):
//   "OODEMB01" | u32 count | u32 dim | count x (u16 id_len | id | dim x f32)
EmbeddingSet parse_embeddings(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_embeddings(const EmbeddingSet& set);

EmbeddingSet load_embeddings(const std::filesystem::path& path);
void save_embeddings(const std::filesystem::path& path, const EmbeddingSet& set);

// u.v / (|u| |v|), accumulated in double. Throws degenerate-embedding on a
// zero-norm input and shape on a dimension mismatch.
double cosine_similarity(std::span<const float> u, std::span<const float> v);

}  // namespace oodbench
