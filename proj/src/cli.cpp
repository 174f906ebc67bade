#include "oodbench/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oodbench/codec.hpp"
#include "oodbench/error.hpp"
#include "oodbench/eval.hpp"
#include "oodbench/pairs.hpp"
#include "oodbench/params.hpp"
#include "oodbench/pipeline.hpp"

namespace oodbench {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<CorruptionKind> parse_kinds(const std::string& text) {
  if (text == "all") return {all_corruption_kinds().begin(), all_corruption_kinds().end()};
  std::vector<CorruptionKind> kinds;
  for (const auto& name : split_list(text)) {
    const CorruptionKind k = corruption_kind_from_string(name);
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  if (kinds.empty()) throw Error(ErrorCategory::parameter, "empty kind list");
  return kinds;
}

std::vector<int> parse_levels(const std::string& text) {
  if (text == "all") return {1, 2, 3, 4, 5};
  std::vector<int> levels;
  for (const auto& item : split_list(text)) {
    int level = 0;
    std::size_t used = 0;
    try {
      level = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCategory::invalid_severity, "bad level '" + item + "'");
    }
    (void)Severity(level);
    if (std::find(levels.begin(), levels.end(), level) == levels.end()) levels.push_back(level);
  }
  if (levels.empty()) throw Error(ErrorCategory::parameter, "empty level list");
  std::sort(levels.begin(), levels.end());
  return levels;
}

nlohmann::json params_json(const ParamSet& p) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& v : p.values) values[v.name] = v.value;
  return values;
}

std::string file_text(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  write_file(out_path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corruption robustness benchmark toolkit for face verification", "oodbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  struct {
    std::string input, output, kinds = "all", levels = "all", dataset;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
  } corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Build a corrupted copy of an image directory");
  corrupt_cmd->add_option("--input", corrupt.input, "Directory of aligned face images")->required();
  corrupt_cmd->add_option("--output", corrupt.output, "Destination directory")->required();
  corrupt_cmd->add_option("--kinds", corrupt.kinds, "all or a comma-separated list");
  corrupt_cmd->add_option("--levels", corrupt.levels, "all or a comma-separated list of 1..5");
  corrupt_cmd->add_option("--seed", corrupt.seed, "Master seed");
  corrupt_cmd->add_option("--jobs", corrupt.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  corrupt_cmd->add_option("--dataset-name", corrupt.dataset, "Name recorded in the manifest");

  std::string param_kind;
  int param_level = 0;
  auto* params_cmd = app.add_subcommand("params", "Print the severity table of a corruption");
  params_cmd->add_option("--kind", param_kind, "Corruption name")->required();
  auto* level_opt = params_cmd->add_option("--level", param_level, "Severity level 1..5");

  struct {
    std::string pairs, format = "csv", clean, grid, policy = "global-best", mode = "corruption",
                       out, model = "model", kinds;
  } ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score embedding files against a pair list");
  eval_cmd->add_option("--pairs", ev.pairs, "Pair list")->required();
  eval_cmd->add_option("--format", ev.format, "csv or lfw");
  eval_cmd->add_option("--clean", ev.clean, "Clean OODEMB01 embeddings")->required();
  eval_cmd->add_option("--grid", ev.grid, "Cell path pattern with {kind} and {level}")->required();
  eval_cmd->add_option("--policy", ev.policy, "global-best, per-cell-best or fixed:THETA");
  eval_cmd->add_option("--mode", ev.mode, "corruption, variation or api");
  eval_cmd->add_option("--out", ev.out, "Report JSON path (stdout when omitted)");
  eval_cmd->add_option("--model", ev.model, "Model name shown in tables");
  eval_cmd->add_option("--kinds", ev.kinds, "Restrict the grid to these kinds");

  std::string report_in, report_format = "csv", report_out;
  auto* report_cmd = app.add_subcommand("report", "Render a report JSON as a table or chart data");
  report_cmd->add_option("--in", report_in, "Report JSON from eval")->required();
  report_cmd->add_option("--format", report_format, "csv, json, markdown, radar-json or line-json");
  report_cmd->add_option("--out", report_out, "Output path (stdout when omitted)");

  std::string convert_in, convert_out;
  auto* convert_cmd = app.add_subcommand("pairs-convert", "Convert an LFW pairs.txt to pairs CSV");
  convert_cmd->add_option("--in", convert_in, "pairs.txt")->required();
  convert_cmd->add_option("--out", convert_out, "pairs.csv")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error:usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (corrupt_cmd->parsed()) {
      CorruptOptions options;
      options.input_root = corrupt.input;
      options.output_root = corrupt.output;
      options.kinds = parse_kinds(corrupt.kinds);
      options.levels = parse_levels(corrupt.levels);
      options.seed.master_seed = corrupt.seed;
      options.jobs = corrupt.jobs;
      options.dataset_name = corrupt.dataset;
      const Manifest m = corrupt_dataset(options);
      std::size_t written = 0, skipped = 0;
      for (const auto& e : m.entries) (e.skipped ? skipped : written) += 1;
      err << "wrote " << written << " images, skipped " << skipped << ", manifest "
          << (std::filesystem::path(corrupt.output) / "manifest.json").string() << '\n';
    } else if (params_cmd->parsed()) {
      const CorruptionKind kind = corruption_kind_from_string(param_kind);
      nlohmann::json doc;
      doc["kind"] = to_string(kind);
      doc["category"] = to_string(category_of(kind));
      if (level_opt->count() > 0) {
        const ParamSet p = severity_params(kind, param_level);
        doc["level"] = param_level;
        doc["params"] = params_json(p);
      } else {
        nlohmann::json levels = nlohmann::json::array();
        for (int level = 1; level <= kSeverityLevels; ++level) {
          levels.push_back({{"level", level}, {"params", params_json(severity_params(kind, level))}});
        }
        doc["levels"] = std::move(levels);
      }
      out << doc.dump(2) << '\n';
    } else if (eval_cmd->parsed()) {
      EvalConfig config;
      config.pairs_path = ev.pairs;
      config.pairs_format = parse_pairs_format(ev.format);
      config.clean_embeddings_path = ev.clean;
      config.grid_pattern = ev.grid;
      config.policy = ThresholdPolicy::parse(ev.policy);
      config.mode = parse_eval_mode(ev.mode);
      config.model = ev.model;
      config.kinds = split_list(ev.kinds);
      const EvalReport report = evaluate(config);
      emit(report_to_json(report), ev.out, out);
      err << "evaluated " << report.pair_count << " pairs over " << report.kinds.size()
          << " kinds\n";
    } else if (report_cmd->parsed()) {
      const ReportFormat format = parse_report_format(report_format);
      const EvalReport report = report_from_json(file_text(report_in));
      emit(emit_report(report, format), report_out, out);
    } else if (convert_cmd->parsed()) {
      const auto pairs = load_pairs(convert_in, PairsFormat::lfw);
      emit(pairs_to_csv(pairs), convert_out, out);
      err << "converted " << pairs.size() << " pairs\n";
    }
  } catch (const Error& e) {
    err << "error:" << category_name(e.category()) << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error:internal: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace oodbench
