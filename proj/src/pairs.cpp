#include "oodbench/pairs.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "oodbench/codec.hpp"
#include "oodbench/error.hpp"

namespace oodbench {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void fail(std::size_t line_number, const std::string& message) {
  throw Error(ErrorCategory::parse, "line " + std::to_string(line_number) + ": " + message);
}

int parse_index(std::string_view token, std::size_t line_number) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 1 || value > 9999) {
    fail(line_number, "bad image index '" + std::string(token) + "'");
  }
  return value;
}

std::string lfw_id(std::string_view name, int index) {
  char suffix[8];
  std::snprintf(suffix, sizeof suffix, "_%04d", index);
  std::string id(name);
  id += '/';
  id += name;
  id += suffix;
  return id;
}

std::vector<PairRecord> parse_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "id_a,id_b,same") {
    fail(1, "expected header 'id_a,id_b,same'");
  }
  std::vector<PairRecord> pairs;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      fail(n + 1, "expected three comma-separated fields");
    }
    const std::string_view a = line.substr(0, c1);
    const std::string_view b = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view same = line.substr(c2 + 1);
    if (a.empty() || b.empty()) fail(n + 1, "empty id");
    if (same != "0" && same != "1") fail(n + 1, "same must be 0 or 1");
    pairs.push_back({std::string(a), std::string(b), same == "1"});
  }
  return pairs;
}

std::vector<PairRecord> parse_lfw(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) fail(1, "missing header line");
  std::vector<PairRecord> pairs;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto tokens = split_whitespace(lines[n]);
    if (tokens.empty()) continue;
    if (tokens.size() == 3) {
      pairs.push_back({lfw_id(tokens[0], parse_index(tokens[1], n + 1)),
                       lfw_id(tokens[0], parse_index(tokens[2], n + 1)), true});
    } else if (tokens.size() == 4) {
      pairs.push_back({lfw_id(tokens[0], parse_index(tokens[1], n + 1)),
                       lfw_id(tokens[2], parse_index(tokens[3], n + 1)), false});
    } else {
      fail(n + 1, "expected 3 or 4 tokens, found " + std::to_string(tokens.size()));
    }
  }
  return pairs;
}

}  // namespace

PairsFormat parse_pairs_format(std::string_view name) {
  if (name == "csv") return PairsFormat::csv;
  if (name == "lfw" || name == "lfw_pairs" || name == "lfw-pairs") return PairsFormat::lfw;
  throw Error(ErrorCategory::parameter, "unknown pairs format '" + std::string(name) + "'");
}

std::vector<PairRecord> parse_pairs(std::string_view text, PairsFormat format) {
  return format == PairsFormat::csv ? parse_csv(text) : parse_lfw(text);
}

std::vector<PairRecord> load_pairs(const std::filesystem::path& path, PairsFormat format) {
  const auto bytes = read_file(path);
  return parse_pairs(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), format);
}

std::string pairs_to_csv(const std::vector<PairRecord>& pairs) {
  std::ostringstream out;
  out << "id_a,id_b,same\n";
  for (const auto& p : pairs) out << p.id_a << ',' << p.id_b << ',' << (p.same_identity ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace oodbench
