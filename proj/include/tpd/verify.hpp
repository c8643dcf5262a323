#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpd/instances.hpp"
#include "tpd/oracle.hpp"
#include "tpd/polytope.hpp"

namespace tpd {

inline constexpr int kCriteriaCount = 11;

struct VerifyOptions {
  std::uint64_t seed = 20161;
  int workers = 1;
  std::uint64_t max_trees = kDefaultMaxTrees;
  std::uint64_t max_states = kDefaultMaxStates;
  std::uint64_t max_solves = kDefaultMaxSolves;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;

  /// "[ 3] PASS  title: detail".
  std::string line() const;
};

/// Runs acceptance criterion `id` (1..kCriteriaCount).
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});

/// Criteria exercised by a suite: hierarchy, marking, monotone, hirsch, lowerbound, all.
std::vector<int> suite_criteria(const std::string& suite);

struct CaseCheck {
  std::string line;
  bool passed = false;
};

/// Checks a generated case for the given suite. The hierarchy suite reports
/// the chain CD_e >= CD_fm >= CD; the others compare every expected value with
/// its oracle and constructive counterpart.
std::vector<CaseCheck> check_case(const GeneratedCase& c, const std::string& suite, const VerifyOptions& opts = {});

/// Vertex pairs (a, b) with a != b: all of them when count < 0 or there are
/// at most `count`, otherwise `count` sampled with the seed.
std::vector<std::pair<int, int>> vertex_pairs(int vertices, int count, std::uint64_t seed);

}  // namespace tpd
