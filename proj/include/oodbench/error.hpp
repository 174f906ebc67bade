#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodbench {

enum class ErrorCategory {
  invalid_kernel,
  invalid_size,
  shape,
  invalid_severity,
  parameter,
  missing_asset,
  no_threshold,
  undefined_accuracy,
  incomplete_grid,
  division_by_zero,
  empty_input,
  partition,
  parse,
  format,
  corruption,
  degenerate_embedding,
  coverage,
  io,
  partial_manifest,
  unknown_kind,
};

std::string_view category_name(ErrorCategory category);

// Every failure surfaced by the library carries a category so callers (the
// CLI in particular) can print a stable "error:<category>:" prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace oodbench
