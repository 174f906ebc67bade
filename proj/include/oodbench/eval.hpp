#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oodbench/embeddings.hpp"
#include "oodbench/metrics.hpp"
#include "oodbench/pairs.hpp"

namespace oodbench {

enum class EvalMode { corruption, variation, api };

std::string_view to_string(EvalMode mode) noexcept;
EvalMode parse_eval_mode(std::string_view name);

struct ThresholdPolicy {
  enum class Kind { global_best, per_cell_best, fixed };
  Kind kind = Kind::global_best;
  double theta = 0.0;  // used by fixed only

  // "global-best", "per-cell-best" or "fixed:<theta>" (underscores accepted).
  static ThresholdPolicy parse(std::string_view text);
  std::string name() const;
};

struct EvalConfig {
  std::filesystem::path pairs_path;
  PairsFormat pairs_format = PairsFormat::csv;
  std::filesystem::path clean_embeddings_path;
  // Path with {kind} and {level} placeholders, one file per grid cell.
  std::string grid_pattern;
  ThresholdPolicy policy;
  EvalMode mode = EvalMode::corruption;
  std::string model = "model";
  // Restricts the grid to these kinds; empty means the full kind set of the mode.
  std::vector<std::string> kinds;
};

std::string expand_grid_pattern(std::string_view pattern, std::string_view kind, int level);

struct KindResult {
  std::string name;
  std::string category;
  std::array<double, 5> accuracy{};
  std::array<double, 5> relative_error{};
  std::array<double, 5> threshold{};
  double mean = 0.0;
  // api mode only: per-level accounting and the counts pooled over levels.
  std::array<ApiReport, 5> api{};
  ApiReport pooled;
};

struct EvalReport {
  EvalMode mode = EvalMode::corruption;
  std::string model;
  std::string policy;
  std::size_t pair_count = 0;
  double threshold = 0.0;  // clean-data threshold
  double acc_clean = 0.0;
  double aggregate = 0.0;
  double relative_error = 0.0;
  std::vector<KindResult> kinds;
  std::vector<CategoryMean> categories;
  ApiReport clean_api;  // api mode only
};

// Scores pairs on the clean set, then on every (kind, level) cell of the grid.
// Non-api modes require every pair id in every cell; api mode treats absent ids
// as rejections and reports AA as the cell accuracy.
EvalReport evaluate(const EvalConfig& config);

// Same computation on already-loaded inputs; `load_cell` returns the embedding
// set for a cell or std::nullopt when the cell file is missing.
using CellLoader = std::function<std::optional<EmbeddingSet>(const std::string& kind, int level)>;
EvalReport evaluate_loaded(const EvalConfig& config, const std::vector<PairRecord>& pairs,
                           const EmbeddingSet& clean, const CellLoader& load_cell);

enum class ReportFormat { csv, json, markdown, radar_json, line_json };

ReportFormat parse_report_format(std::string_view name);

// JSON with sorted keys and fractions as numbers; trailing LF.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view text);

// csv/markdown follow the benchmark table layout: a clean row, kinds grouped by
// category, then an Average row, percentages with two decimals.
std::string emit_report(const EvalReport& report, ReportFormat format);

}  // namespace oodbench
