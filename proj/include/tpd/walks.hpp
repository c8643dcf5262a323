#pragma once

#include <optional>
#include <string>

#include "tpd/core.hpp"

namespace tpd {

struct WalkViolation {
  /// Index of the offending step, or -1 for whole-walk problems (shape, endpoints).
  int step = -1;
  std::string reason;
};

struct WalkReport {
  bool valid = true;
  WalkKind kind = WalkKind::kCD;
  std::optional<WalkViolation> violation;
};

/// Checks the walk against the rules of its declared kind.
WalkReport validate_walk(const Walk& w, const Instance& inst);
/// Same, but checks the rules of `kind` instead.
WalkReport validate_walk(const Walk& w, const Instance& inst, WalkKind kind);

/// Objective values along the walk never decrease.
bool is_monotone(const Walk& w, const Matrix& cost);

}  // namespace tpd
