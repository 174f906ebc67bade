#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodbench/corruption_kind.hpp"

namespace oodbench {

struct PairRecord {
  std::string id_a;
  std::string id_b;
  bool same_identity = false;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

// A scored verification pair. A missing similarity means the pair was rejected
// (at least one image yielded no embedding).
struct SimilarityOutcome {
  std::optional<double> similarity;
  bool same_identity = false;

  bool rejected() const noexcept { return !similarity.has_value(); }
};

struct ThresholdResult {
  double threshold = 0.0;
  double accuracy = 0.0;
};

// Decision rule: predict "same" iff similarity >= threshold.
//
// Candidates are the midpoints between consecutive distinct similarities plus
// min - 1 and max + 1. Returns the maximizing candidate, ties broken toward the
// smallest threshold. Rejected outcomes are ignored.
ThresholdResult best_threshold(std::span<const SimilarityOutcome> outcomes);

// Accuracy over non-rejected outcomes at a fixed threshold.
double accuracy_at(std::span<const SimilarityOutcome> outcomes, double threshold);

// Accuracy table over kinds x severity levels 1..5 plus the clean accuracy.
// Kind names are free-form so the same grid serves corruptions and variations.
struct AccuracyGrid {
  double acc_clean = 0.0;
  std::vector<std::string> kinds;
  std::vector<std::array<std::optional<double>, 5>> cells;

  void set(const std::string& kind, int level, double accuracy);
  std::optional<double> get(const std::string& kind, int level) const;
  // Throws incomplete-grid when any cell is unset.
  void require_complete() const;
};

struct CategoryMean {
  std::string name;
  double accuracy = 0.0;
};

// The corruption metrics (Acc_cor / RCE) and variation metrics (Acc_var / RVE) share
// this shape; `aggregate` holds Acc_cor or Acc_var, `relative_error` RCE or RVE.
struct RobustnessReport {
  double acc_clean = 0.0;
  double aggregate = 0.0;
  double relative_error = 0.0;
  std::vector<std::string> kinds;
  std::vector<std::array<double, 5>> accuracy;
  std::vector<std::array<double, 5>> relative_error_cell;
  std::vector<double> kind_means;
  std::vector<CategoryMean> category_means;
};

// (1/|C|) sum_c (1/5) sum_s Acc_{c,s}
double acc_cor(const AccuracyGrid& grid);

// (clean - x) / clean. Throws division-by-zero when clean == 0.
double relative_error(double acc_clean, double accuracy);

// Full report for a corruption grid: Acc_cor, RCE, per-cell RCE, kind and
// category means (category means use the corruption taxonomy restricted to
// the kinds present).
RobustnessReport rce(const AccuracyGrid& grid);

// Same structure over the appearance-variation taxonomy.
RobustnessReport acc_var_rve(const AccuracyGrid& grid);

// Generic form used by both of the above.
RobustnessReport robustness_report(const AccuracyGrid& grid, const Taxonomy& taxonomy);

// Mean over member kinds of the per-kind 5-level means. Groups with no member
// in the grid are omitted; a grid kind outside the taxonomy is a partition error.
std::vector<CategoryMean> category_means(const AccuracyGrid& grid, const Taxonomy& taxonomy);

enum class PairDecision { correct, incorrect, rejected };

struct ApiReport {
  std::size_t total = 0;
  std::size_t rejected = 0;
  std::size_t correct = 0;
  double rr = 0.0;
  double asa = 0.0;
  double aa = 0.0;
};

// rr = rejected/total, asa = correct/accepted (0 when nothing accepted),
// aa = correct/total.
ApiReport api_metrics(std::span<const PairDecision> decisions);
ApiReport api_metrics_from_counts(std::size_t total, std::size_t rejected, std::size_t correct);

// Resolves outcomes to decisions at a threshold.
std::vector<PairDecision> decide(std::span<const SimilarityOutcome> outcomes, double threshold);

}  // namespace oodbench
