#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "oodbench/metrics.hpp"

namespace oodbench {

enum class PairsFormat { csv, lfw };

PairsFormat parse_pairs_format(std::string_view name);

// csv: header "id_a,id_b,same", then one "a,b,0|1" row per pair.
// lfw: a fold/count header line, then "name i j" (same identity) or
// "name1 i name2 j" (different identities); ids become "name/name_%04d".
std::vector<PairRecord> parse_pairs(std::string_view text, PairsFormat format);
std::vector<PairRecord> load_pairs(const std::filesystem::path& path, PairsFormat format);

std::string pairs_to_csv(const std::vector<PairRecord>& pairs);

}  // namespace oodbench
