#include "oodbench/metrics.hpp"

#include <algorithm>
#include <string>

#include "oodbench/error.hpp"

namespace oodbench {

namespace {

struct Scored {
  double similarity;
  bool same;
};

std::vector<Scored> accepted(std::span<const SimilarityOutcome> outcomes) {
  std::vector<Scored> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes)
    if (o.similarity) out.push_back({*o.similarity, o.same_identity});
  return out;
}

double mean5(const std::array<double, 5>& v) {
  return (v[0] + v[1] + v[2] + v[3] + v[4]) / 5.0;
}

}  // namespace

ThresholdResult best_threshold(std::span<const SimilarityOutcome> outcomes) {
  std::vector<Scored> scored = accepted(outcomes);
  if (scored.empty()) {
    throw Error(ErrorCategory::no_threshold, "every outcome is rejected; no threshold exists");
  }
  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.similarity < b.similarity; });
  const std::size_t n = scored.size();
  std::size_t positives = 0;
  for (const auto& s : scored) positives += s.same ? 1 : 0;

  // Lowest sentinel: everything predicted "same".
  std::size_t correct = positives;
  std::size_t best_correct = correct;
  double best_theta = scored.front().similarity - 1.0;

  std::size_t i = 0;
  while (i < n) {
    const double value = scored[i].similarity;
    // Move the threshold above this group of equal similarities.
    while (i < n && scored[i].similarity == value) {
      if (scored[i].same) {
        --correct;
      } else {
        ++correct;
      }
      ++i;
    }
    const double theta = i < n ? 0.5 * (value + scored[i].similarity) : value + 1.0;
    if (correct > best_correct) {
      best_correct = correct;
      best_theta = theta;
    }
  }
  return {best_theta, static_cast<double>(best_correct) / static_cast<double>(n)};
}

double accuracy_at(std::span<const SimilarityOutcome> outcomes, double threshold) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& o : outcomes) {
    if (!o.similarity) continue;
    ++total;
    if ((*o.similarity >= threshold) == o.same_identity) ++correct;
  }
  if (total == 0) {
    throw Error(ErrorCategory::undefined_accuracy, "accuracy is undefined with no accepted pairs");
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

void AccuracyGrid::set(const std::string& kind, int level, double accuracy) {
  const Severity s(level);
  auto it = std::find(kinds.begin(), kinds.end(), kind);
  if (it == kinds.end()) {
    kinds.push_back(kind);
    cells.emplace_back();
    it = kinds.end() - 1;
  }
  cells[static_cast<std::size_t>(it - kinds.begin())][s.index()] = accuracy;
}

std::optional<double> AccuracyGrid::get(const std::string& kind, int level) const {
  const Severity s(level);
  const auto it = std::find(kinds.begin(), kinds.end(), kind);
  if (it == kinds.end()) return std::nullopt;
  return cells[static_cast<std::size_t>(it - kinds.begin())][s.index()];
}

void AccuracyGrid::require_complete() const {
  if (kinds.empty()) throw Error(ErrorCategory::incomplete_grid, "accuracy grid has no kinds");
  if (cells.size() != kinds.size()) {
    throw Error(ErrorCategory::incomplete_grid, "accuracy grid rows do not match its kinds");
  }
  for (std::size_t k = 0; k < kinds.size(); ++k)
    for (int s = 0; s < kSeverityLevels; ++s)
      if (!cells[k][static_cast<std::size_t>(s)]) {
        throw Error(ErrorCategory::incomplete_grid,
                    "missing cell " + kinds[k] + " level " + std::to_string(s + 1));
      }
}

double acc_cor(const AccuracyGrid& grid) {
  grid.require_complete();
  double total = 0.0;
  for (const auto& row : grid.cells) {
    double level_sum = 0.0;
    for (const auto& cell : row) level_sum += *cell;
    total += level_sum / kSeverityLevels;
  }
  return total / static_cast<double>(grid.kinds.size());
}

double relative_error(double acc_clean, double accuracy) {
  if (acc_clean == 0.0) {
    throw Error(ErrorCategory::division_by_zero, "clean accuracy is zero; relative error undefined");
  }
  return (acc_clean - accuracy) / acc_clean;
}

std::vector<CategoryMean> category_means(const AccuracyGrid& grid, const Taxonomy& taxonomy) {
  grid.require_complete();
  for (const auto& kind : grid.kinds) {
    const bool known = std::any_of(taxonomy.begin(), taxonomy.end(), [&](const TaxonomyGroup& g) {
      return std::find(g.members.begin(), g.members.end(), kind) != g.members.end();
    });
    if (!known) {
      throw Error(ErrorCategory::partition, "kind '" + kind + "' is not part of the taxonomy");
    }
  }
  std::vector<CategoryMean> out;
  for (const auto& group : taxonomy) {
    double total = 0.0;
    int members = 0;
    for (const auto& member : group.members) {
      const auto it = std::find(grid.kinds.begin(), grid.kinds.end(), member);
      if (it == grid.kinds.end()) continue;
      const auto& row = grid.cells[static_cast<std::size_t>(it - grid.kinds.begin())];
      double level_sum = 0.0;
      for (const auto& cell : row) level_sum += *cell;
      total += level_sum / kSeverityLevels;
      ++members;
    }
    if (members > 0) out.push_back({group.name, total / members});
  }
  return out;
}

RobustnessReport robustness_report(const AccuracyGrid& grid, const Taxonomy& taxonomy) {
  grid.require_complete();
  RobustnessReport report;
  report.acc_clean = grid.acc_clean;
  report.aggregate = acc_cor(grid);
  report.relative_error = relative_error(grid.acc_clean, report.aggregate);
  report.kinds = grid.kinds;
  for (const auto& row : grid.cells) {
    std::array<double, 5> acc{};
    std::array<double, 5> err{};
    for (std::size_t s = 0; s < acc.size(); ++s) {
      acc[s] = *row[s];
      err[s] = relative_error(grid.acc_clean, acc[s]);
    }
    report.accuracy.push_back(acc);
    report.relative_error_cell.push_back(err);
    report.kind_means.push_back(mean5(acc));
  }
  report.category_means = category_means(grid, taxonomy);
  return report;
}

RobustnessReport rce(const AccuracyGrid& grid) {
  return robustness_report(grid, corruption_taxonomy());
}

RobustnessReport acc_var_rve(const AccuracyGrid& grid) {
  return robustness_report(grid, variation_taxonomy());
}

ApiReport api_metrics_from_counts(std::size_t total, std::size_t rejected, std::size_t correct) {
  if (total == 0) throw Error(ErrorCategory::empty_input, "no pairs to score");
  ApiReport r;
  r.total = total;
  r.rejected = rejected;
  r.correct = correct;
  const std::size_t accepted_count = total - rejected;
  r.rr = static_cast<double>(rejected) / static_cast<double>(total);
  r.asa = accepted_count == 0 ? 0.0
                              : static_cast<double>(correct) / static_cast<double>(accepted_count);
  r.aa = static_cast<double>(correct) / static_cast<double>(total);
  return r;
}

ApiReport api_metrics(std::span<const PairDecision> decisions) {
  std::size_t rejected = 0;
  std::size_t correct = 0;
  for (PairDecision d : decisions) {
    if (d == PairDecision::rejected) ++rejected;
    if (d == PairDecision::correct) ++correct;
  }
  return api_metrics_from_counts(decisions.size(), rejected, correct);
}

std::vector<PairDecision> decide(std::span<const SimilarityOutcome> outcomes, double threshold) {
  std::vector<PairDecision> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    if (!o.similarity) {
      out.push_back(PairDecision::rejected);
    } else {
      out.push_back((*o.similarity >= threshold) == o.same_identity ? PairDecision::correct
                                                                   : PairDecision::incorrect);
    }
  }
  return out;
}

}  // namespace oodbench
