#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oodbench/corruption_kind.hpp"

namespace oodbench {

struct NamedValue {
  std::string name;
  double value;
};

// Resolved per-level hyperparameters for one corruption kind. The value list
// has a fixed schema (names and order) per kind.
struct ParamSet {
  CorruptionKind kind;
  Severity level;
  std::vector<NamedValue> values;

  // Throws Error(parameter) when the name is not part of this kind's schema.
  double get(std::string_view name) const;
};

ParamSet severity_params(CorruptionKind kind, Severity level);
ParamSet severity_params(CorruptionKind kind, int level);

// Parameter names for a kind, in schema order.
std::vector<std::string> param_names(CorruptionKind kind);

}  // namespace oodbench
