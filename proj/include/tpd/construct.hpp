#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpd/circuits.hpp"
#include "tpd/core.hpp"

namespace tpd {

// Current vertex of an edge walk plus the edges already marked. Marked edges
// belong to the target and are never deleted again.
struct MarkState {
  Matrix current;
  EdgeSet marked;
};

// One step of the marking system: at most one pivot, then exactly one new mark.
struct Transition {
  std::string rule;
  /// Supply the marking lemma was applied to, or -1 for case-specific rules.
  int supply = -1;
  std::optional<PivotResult> pivot;
  Edge marked;
  MarkState next;
};

struct ConstructedWalk {
  Walk walk;
  std::vector<Transition> trace;

  int mark_only() const;
};

/// Maximal-step circuit walk between vertices of a 2×n polytope that only
/// deletes edges outside the target. Degenerate margins are allowed.
Walk cdfm_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& to);

/// Whether `e` may be marked in `state` for target support `target`.
bool can_mark(const EdgeSet& target, const MarkState& state, const Edge& e);

/// Every marked mixed edge of the current vertex is an even number of edges
/// away from `supply` inside the mixed part.
bool marking_hypothesis(const MarkState& state, int supply);

/// The marking lemma applied to `supply`: mark one more edge of `target`
/// after at most one pivot. Throws InvalidArgument when the hypothesis fails.
Transition mark_pivot(const Instance& inst, const Matrix& target, const MarkState& state, int supply);

/// Edge walk of length <= min(n, n+1-k) in a non-degenerate 2×n polytope.
ConstructedWalk edge_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& to);

/// The greedy maximizer of cost·y over a non-degenerate 2×n polytope.
Matrix lp_optimum_2xn(const Instance& inst, const Matrix& cost);

/// Edge walk from `from` to lp_optimum_2xn(cost) with nondecreasing objective.
ConstructedWalk monotone_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& cost);

/// Edge walk of length <= n+2-k in a non-degenerate 3×n polytope.
ConstructedWalk edge_walk_3xn(const Instance& inst, const Matrix& from, const Matrix& to);

}  // namespace tpd
