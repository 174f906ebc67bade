#include "oodbench/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "oodbench/codec.hpp"
#include "oodbench/error.hpp"

namespace oodbench {

namespace {

constexpr char kMagic[8] = {'O', 'O', 'D', 'E', 'M', 'B', '0', '1'};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool done() const noexcept { return pos_ == bytes_.size(); }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCategory::corruption,
                  std::string("embedding file truncated while reading ") + what);
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32(const char* what) {
    const auto b = take(4, what);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  }

  std::uint16_t u16(const char* what) {
    const auto b = take(2, what);
    return static_cast<std::uint16_t>(b[0] | b[1] << 8);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

EmbeddingSet::EmbeddingSet(std::uint32_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCategory::format, "embedding dimension must be positive");
}

void EmbeddingSet::add(std::string id, std::span<const float> values) {
  if (id.empty()) throw Error(ErrorCategory::format, "embedding id is empty");
  if (values.size() != dim_) {
    throw Error(ErrorCategory::shape, "embedding '" + id + "' has length " +
                                          std::to_string(values.size()) + ", expected " +
                                          std::to_string(dim_));
  }
  for (float v : values)
    if (!std::isfinite(v)) {
      throw Error(ErrorCategory::corruption, "embedding '" + id + "' has a non-finite component");
    }
  if (index_.contains(id)) throw Error(ErrorCategory::format, "duplicate embedding id '" + id + "'");
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
}

bool EmbeddingSet::contains(std::string_view id) const {
  return index_.contains(std::string(id));
}

std::span<const float> EmbeddingSet::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return {};
  return at(it->second);
}

std::span<const float> EmbeddingSet::at(std::size_t index) const {
  return std::span(values_).subspan(index * dim_, dim_);
}

EmbeddingSet parse_embeddings(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCategory::format, "not an OODEMB01 embedding file (bad magic)");
  }
  Reader in(bytes.subspan(sizeof kMagic));
  const std::uint32_t count = in.u32("record count");
  const std::uint32_t dim = in.u32("dimension");
  EmbeddingSet set(dim);
  std::vector<float> values(dim);
  for (std::uint32_t r = 0; r < count; ++r) {
    const std::uint16_t len = in.u16("id length");
    const auto id = in.take(len, "id");
    const auto raw = in.take(std::size_t{4} * dim, "vector");
    for (std::uint32_t k = 0; k < dim; ++k) {
      const std::uint32_t word = static_cast<std::uint32_t>(raw[4 * k]) |
                                 static_cast<std::uint32_t>(raw[4 * k + 1]) << 8 |
                                 static_cast<std::uint32_t>(raw[4 * k + 2]) << 16 |
                                 static_cast<std::uint32_t>(raw[4 * k + 3]) << 24;
      values[k] = std::bit_cast<float>(word);
    }
    set.add(std::string(reinterpret_cast<const char*>(id.data()), id.size()), values);
  }
  if (!in.done()) throw Error(ErrorCategory::corruption, "trailing bytes after the last record");
  return set;
}

std::vector<std::uint8_t> serialize_embeddings(const EmbeddingSet& set) {
  std::vector<std::uint8_t> out(kMagic, kMagic + sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(set.size()));
  put_u32(out, set.dim());
  for (std::size_t r = 0; r < set.size(); ++r) {
    const std::string& id = set.ids()[r];
    if (id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCategory::format, "embedding id longer than 65535 bytes");
    }
    out.push_back(static_cast<std::uint8_t>(id.size() & 0xff));
    out.push_back(static_cast<std::uint8_t>(id.size() >> 8));
    out.insert(out.end(), id.begin(), id.end());
    for (float v : set.at(r)) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
  return parse_embeddings(read_file(path));
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingSet& set) {
  write_file(path, serialize_embeddings(set));
}

double cosine_similarity(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) throw Error(ErrorCategory::shape, "embedding dimensions differ");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    uu += static_cast<double>(u[i]) * u[i];
    vv += static_cast<double>(v[i]) * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw Error(ErrorCategory::degenerate_embedding, "zero-norm embedding");
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace oodbench
