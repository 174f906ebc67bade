#include "oodbench/error.hpp"

namespace oodbench {

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::invalid_kernel: return "invalid-kernel";
    case ErrorCategory::invalid_size: return "invalid-size";
    case ErrorCategory::shape: return "shape";
    case ErrorCategory::invalid_severity: return "invalid-severity";
    case ErrorCategory::parameter: return "parameter";
    case ErrorCategory::missing_asset: return "missing-asset";
    case ErrorCategory::no_threshold: return "no-threshold";
    case ErrorCategory::undefined_accuracy: return "undefined-accuracy";
    case ErrorCategory::incomplete_grid: return "incomplete-grid";
    case ErrorCategory::division_by_zero: return "division-by-zero";
    case ErrorCategory::empty_input: return "empty-input";
    case ErrorCategory::partition: return "partition";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::format: return "format";
    case ErrorCategory::corruption: return "corruption";
    case ErrorCategory::degenerate_embedding: return "degenerate-embedding";
    case ErrorCategory::coverage: return "coverage";
    case ErrorCategory::io: return "io";
    case ErrorCategory::partial_manifest: return "partial-manifest";
    case ErrorCategory::unknown_kind: return "unknown-kind";
  }
  return "unknown";
}

}  // namespace oodbench
