#include "oodbench/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oodbench/error.hpp"

namespace oodbench {

using nlohmann::json;

std::string_view to_string(EvalMode mode) noexcept {
  switch (mode) {
    case EvalMode::corruption: return "corruption";
    case EvalMode::variation: return "variation";
    case EvalMode::api: return "api";
  }
  return "corruption";
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "corruption") return EvalMode::corruption;
  if (name == "variation") return EvalMode::variation;
  if (name == "api") return EvalMode::api;
  throw Error(ErrorCategory::parameter, "unknown mode '" + std::string(name) + "'");
}

ThresholdPolicy ThresholdPolicy::parse(std::string_view text) {
  std::string t(text);
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "global-best") return {Kind::global_best, 0.0};
  if (t == "per-cell-best") return {Kind::per_cell_best, 0.0};
  if (t.rfind("fixed:", 0) == 0) {
    const std::string number = t.substr(6);
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size() || !std::isfinite(theta)) {
      throw Error(ErrorCategory::parameter, "fixed threshold needs a finite number, got '" + number + "'");
    }
    return {Kind::fixed, theta};
  }
  throw Error(ErrorCategory::parameter, "unknown threshold policy '" + std::string(text) + "'");
}

std::string ThresholdPolicy::name() const {
  switch (kind) {
    case Kind::global_best: return "global-best";
    case Kind::per_cell_best: return "per-cell-best";
    case Kind::fixed: {
      std::ostringstream out;
      out << "fixed:" << theta;
      return out.str();
    }
  }
  return "global-best";
}

std::string expand_grid_pattern(std::string_view pattern, std::string_view kind, int level) {
  if (pattern.find("{kind}") == std::string_view::npos ||
      pattern.find("{level}") == std::string_view::npos) {
    throw Error(ErrorCategory::parameter,
                "grid pattern must contain both {kind} and {level}: " + std::string(pattern));
  }
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.compare(i, 6, "{kind}") == 0) {
      out += kind;
      i += 6;
    } else if (pattern.compare(i, 7, "{level}") == 0) {
      out += std::to_string(level);
      i += 7;
    } else {
      out += pattern[i++];
    }
  }
  return out;
}

namespace {

const Taxonomy& taxonomy_for(EvalMode mode) {
  return mode == EvalMode::variation ? variation_taxonomy() : corruption_taxonomy();
}

std::string group_of(const Taxonomy& taxonomy, const std::string& kind) {
  for (const auto& g : taxonomy)
    if (std::find(g.members.begin(), g.members.end(), kind) != g.members.end()) return g.name;
  throw Error(ErrorCategory::unknown_kind, "kind '" + kind + "' is not part of the taxonomy");
}

std::vector<std::string> grid_kinds(const EvalConfig& config) {
  const Taxonomy& taxonomy = taxonomy_for(config.mode);
  std::vector<std::string> all;
  for (const auto& g : taxonomy) all.insert(all.end(), g.members.begin(), g.members.end());
  if (config.kinds.empty()) return all;
  for (const auto& k : config.kinds) (void)group_of(taxonomy, k);
  // Keep table order whatever order the caller listed them in.
  std::vector<std::string> out;
  for (const auto& k : all)
    if (std::find(config.kinds.begin(), config.kinds.end(), k) != config.kinds.end()) out.push_back(k);
  return out;
}

std::vector<SimilarityOutcome> score(const std::vector<PairRecord>& pairs, const EmbeddingSet& set,
                                     bool allow_missing, const std::string& where) {
  std::vector<SimilarityOutcome> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto a = set.find(p.id_a);
    const auto b = set.find(p.id_b);
    if (a.empty() || b.empty()) {
      if (!allow_missing) {
        throw Error(ErrorCategory::coverage,
                    where + " has no embedding for '" + (a.empty() ? p.id_a : p.id_b) + "'");
      }
      out.push_back({std::nullopt, p.same_identity});
      continue;
    }
    out.push_back({cosine_similarity(a, b), p.same_identity});
  }
  return out;
}

json api_json(const ApiReport& r) {
  return {{"aa", r.aa}, {"asa", r.asa}, {"correct", r.correct},
          {"rejected", r.rejected}, {"rr", r.rr}, {"total", r.total}};
}

ApiReport api_from_json(const json& j) {
  ApiReport r;
  r.aa = j.at("aa").get<double>();
  r.asa = j.at("asa").get<double>();
  r.correct = j.at("correct").get<std::size_t>();
  r.rejected = j.at("rejected").get<std::size_t>();
  r.rr = j.at("rr").get<double>();
  r.total = j.at("total").get<std::size_t>();
  return r;
}

std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string kind_display(EvalMode mode, const std::string& name) {
  if (mode == EvalMode::variation) return variation_display_name(name);
  return std::string(display_name(corruption_kind_from_string(name)));
}

std::string group_display(EvalMode mode, const std::string& name) {
  for (const auto& g : taxonomy_for(mode))
    if (g.name == name) return g.display;
  return name;
}

std::string emit_table(const EvalReport& r, bool markdown) {
  std::ostringstream out;
  const bool api = r.mode == EvalMode::api;
  const std::string column = r.mode == EvalMode::variation ? "variation" : "corruption";
  const auto row = [&](const std::string& category, const std::string& kind,
                       const std::vector<std::string>& values) {
    if (markdown) {
      out << "| " << category << " | " << kind;
      for (const auto& v : values) out << " | " << v;
      out << " |\n";
    } else {
      out << category << ',' << kind;
      for (const auto& v : values) out << ',' << v;
      out << '\n';
    }
  };

  if (markdown) {
    const std::vector<std::string> header =
        api ? std::vector<std::string>{"RR", "ASA", "AA"} : std::vector<std::string>{r.model};
    row("Category", r.mode == EvalMode::variation ? "Variation" : "Corruption", header);
    out << "|---|---";
    for (std::size_t i = 0; i < header.size(); ++i) out << "|---:";
    out << "|\n";
  } else {
    row("category", column,
        api ? std::vector<std::string>{"rr", "asa", "aa"} : std::vector<std::string>{r.model});
  }

  const auto api_values = [](const ApiReport& a) {
    return std::vector<std::string>{pct(a.rr), pct(a.asa), pct(a.aa)};
  };
  if (api) {
    row("", markdown ? "Clean" : "clean", api_values(r.clean_api));
  } else {
    row("", markdown ? "Clean" : "clean", {pct(r.acc_clean)});
  }
  for (const auto& k : r.kinds) {
    const std::string category = markdown ? group_display(r.mode, k.category) : k.category;
    const std::string kind = markdown ? kind_display(r.mode, k.name) : k.name;
    row(category, kind, api ? api_values(k.pooled) : std::vector<std::string>{pct(k.mean)});
  }
  const std::string average = markdown ? "**Average**" : "Average";
  if (api) {
    double rr = 0.0, asa = 0.0, aa = 0.0;
    for (const auto& k : r.kinds) {
      rr += k.pooled.rr;
      asa += k.pooled.asa;
      aa += k.pooled.aa;
    }
    const double n = static_cast<double>(std::max<std::size_t>(1, r.kinds.size()));
    row("", average, {pct(rr / n), pct(asa / n), pct(aa / n)});
  } else {
    row("", average, {pct(r.aggregate)});
  }
  return out.str();
}

std::string emit_radar(const EvalReport& r) {
  json axes = json::array();
  for (const auto& k : r.kinds) axes.push_back(k.name);
  json series = json::array();
  for (int s = 0; s < kSeverityLevels; ++s) {
    json values = json::array();
    for (const auto& k : r.kinds) values.push_back(k.accuracy[static_cast<std::size_t>(s)]);
    series.push_back({{"level", s + 1}, {"values", std::move(values)}});
  }
  json doc = {{"axes", std::move(axes)}, {"clean", r.acc_clean}, {"mode", to_string(r.mode)},
              {"model", r.model}, {"series", std::move(series)}};
  return doc.dump(2) + "\n";
}

std::string emit_line(const EvalReport& r) {
  json series = json::array();
  for (const auto& k : r.kinds) {
    series.push_back({{"category", k.category}, {"kind", k.name}, {"values", k.accuracy}});
  }
  json doc = {{"clean", r.acc_clean},         {"levels", {1, 2, 3, 4, 5}},
              {"mode", to_string(r.mode)},    {"model", r.model},
              {"series", std::move(series)}};
  return doc.dump(2) + "\n";
}

}  // namespace

EvalReport evaluate_loaded(const EvalConfig& config, const std::vector<PairRecord>& pairs,
                           const EmbeddingSet& clean, const CellLoader& load_cell) {
  if (pairs.empty()) throw Error(ErrorCategory::empty_input, "pair list is empty");
  const bool api = config.mode == EvalMode::api;
  const Taxonomy& taxonomy = taxonomy_for(config.mode);
  const auto kinds = grid_kinds(config);

  const auto clean_outcomes = score(pairs, clean, false, "clean embedding set");
  double clean_theta = config.policy.theta;
  if (config.policy.kind != ThresholdPolicy::Kind::fixed) {
    clean_theta = best_threshold(clean_outcomes).threshold;
  }

  EvalReport report;
  report.mode = config.mode;
  report.model = config.model;
  report.policy = config.policy.name();
  report.pair_count = pairs.size();
  report.threshold = clean_theta;
  if (api) report.clean_api = api_metrics(decide(clean_outcomes, clean_theta));

  AccuracyGrid grid;
  grid.acc_clean = api ? report.clean_api.aa : accuracy_at(clean_outcomes, clean_theta);

  std::vector<std::string> missing;
  for (const auto& kind : kinds) {
    KindResult result;
    result.name = kind;
    result.category = group_of(taxonomy, kind);
    std::size_t total = 0, rejected = 0, correct = 0;
    for (int level = 1; level <= kSeverityLevels; ++level) {
      const auto s = static_cast<std::size_t>(level - 1);
      auto cell = load_cell(kind, level);
      if (!cell) {
        missing.push_back(kind + "/" + std::to_string(level));
        continue;
      }
      const auto outcomes =
          score(pairs, *cell, api, "cell " + kind + "/" + std::to_string(level));
      double theta = clean_theta;
      if (config.policy.kind == ThresholdPolicy::Kind::per_cell_best) {
        const bool any_accepted = std::any_of(outcomes.begin(), outcomes.end(),
                                              [](const SimilarityOutcome& o) { return !o.rejected(); });
        if (any_accepted) theta = best_threshold(outcomes).threshold;
      }
      result.threshold[s] = theta;
      if (api) {
        result.api[s] = api_metrics(decide(outcomes, theta));
        total += result.api[s].total;
        rejected += result.api[s].rejected;
        correct += result.api[s].correct;
        grid.set(kind, level, result.api[s].aa);
      } else {
        grid.set(kind, level, accuracy_at(outcomes, theta));
      }
    }
    if (api && total > 0) result.pooled = api_metrics_from_counts(total, rejected, correct);
    report.kinds.push_back(std::move(result));
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw Error(ErrorCategory::incomplete_grid,
                std::to_string(missing.size()) + " grid cell(s) missing: " + list);
  }

  const RobustnessReport robustness = robustness_report(grid, taxonomy);
  report.acc_clean = robustness.acc_clean;
  report.aggregate = robustness.aggregate;
  report.relative_error = robustness.relative_error;
  report.categories = robustness.category_means;
  for (std::size_t k = 0; k < report.kinds.size(); ++k) {
    report.kinds[k].accuracy = robustness.accuracy[k];
    report.kinds[k].relative_error = robustness.relative_error_cell[k];
    report.kinds[k].mean = robustness.kind_means[k];
  }
  return report;
}

EvalReport evaluate(const EvalConfig& config) {
  const auto pairs = load_pairs(config.pairs_path, config.pairs_format);
  const auto clean = load_embeddings(config.clean_embeddings_path);
  return evaluate_loaded(config, pairs, clean, [&](const std::string& kind, int level) {
    const std::filesystem::path path = expand_grid_pattern(config.grid_pattern, kind, level);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::optional<EmbeddingSet>{};
    return std::optional<EmbeddingSet>(load_embeddings(path));
  });
}

ReportFormat parse_report_format(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "csv") return ReportFormat::csv;
  if (n == "json") return ReportFormat::json;
  if (n == "markdown" || n == "md") return ReportFormat::markdown;
  if (n == "radar-json") return ReportFormat::radar_json;
  if (n == "line-json") return ReportFormat::line_json;
  throw Error(ErrorCategory::parameter, "unknown report format '" + std::string(name) + "'");
}

std::string report_to_json(const EvalReport& r) {
  json kinds = json::array();
  for (const auto& k : r.kinds) {
    json j = {{"accuracy", k.accuracy}, {"category", k.category}, {"mean", k.mean},
              {"name", k.name},         {"relative_error", k.relative_error},
              {"threshold", k.threshold}};
    if (r.mode == EvalMode::api) {
      json levels = json::array();
      for (const auto& a : k.api) levels.push_back(api_json(a));
      j["api"] = std::move(levels);
      j["pooled"] = api_json(k.pooled);
    }
    kinds.push_back(std::move(j));
  }
  json categories = json::array();
  for (const auto& c : r.categories) categories.push_back({{"accuracy", c.accuracy}, {"name", c.name}});
  json doc = {{"acc_clean", r.acc_clean},
              {"aggregate", r.aggregate},
              {"categories", std::move(categories)},
              {"kinds", std::move(kinds)},
              {"mode", to_string(r.mode)},
              {"model", r.model},
              {"pair_count", r.pair_count},
              {"policy", r.policy},
              {"relative_error", r.relative_error},
              {"threshold", r.threshold}};
  if (r.mode == EvalMode::api) doc["clean_api"] = api_json(r.clean_api);
  return doc.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::parse, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    EvalReport r;
    r.mode = parse_eval_mode(doc.at("mode").get<std::string>());
    r.model = doc.at("model").get<std::string>();
    r.policy = doc.at("policy").get<std::string>();
    r.pair_count = doc.at("pair_count").get<std::size_t>();
    r.threshold = doc.at("threshold").get<double>();
    r.acc_clean = doc.at("acc_clean").get<double>();
    r.aggregate = doc.at("aggregate").get<double>();
    r.relative_error = doc.at("relative_error").get<double>();
    for (const auto& c : doc.at("categories")) {
      r.categories.push_back({c.at("name").get<std::string>(), c.at("accuracy").get<double>()});
    }
    for (const auto& j : doc.at("kinds")) {
      KindResult k;
      k.name = j.at("name").get<std::string>();
      k.category = j.at("category").get<std::string>();
      k.accuracy = j.at("accuracy").get<std::array<double, 5>>();
      k.relative_error = j.at("relative_error").get<std::array<double, 5>>();
      k.threshold = j.at("threshold").get<std::array<double, 5>>();
      k.mean = j.at("mean").get<double>();
      if (r.mode == EvalMode::api) {
        const auto& levels = j.at("api");
        if (levels.size() != k.api.size()) throw Error(ErrorCategory::parse, "api levels must have 5 entries");
        for (std::size_t s = 0; s < k.api.size(); ++s) k.api[s] = api_from_json(levels[s]);
        k.pooled = api_from_json(j.at("pooled"));
      }
      r.kinds.push_back(std::move(k));
    }
    if (r.mode == EvalMode::api) r.clean_api = api_from_json(doc.at("clean_api"));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::parse, std::string("report schema mismatch: ") + e.what());
  }
}

std::string emit_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return emit_table(report, false);
    case ReportFormat::markdown: return emit_table(report, true);
    case ReportFormat::json: return report_to_json(report);
    case ReportFormat::radar_json: return emit_radar(report);
    case ReportFormat::line_json: return emit_line(report);
  }
  return report_to_json(report);
}

}  // namespace oodbench
