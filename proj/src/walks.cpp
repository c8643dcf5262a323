#include "tpd/walks.hpp"

#include "tpd/circuits.hpp"
#include "tpd/polytope.hpp"

namespace tpd {

namespace {

WalkReport fail(WalkKind kind, int step, std::string reason) {
  return {false, kind, WalkViolation{step, std::move(reason)}};
}

bool is_vertex_of(const Instance& inst, const Matrix& y) {
  return inst.is_feasible(y) && is_forest(support_graph(y));
}

}  // namespace

WalkReport validate_walk(const Walk& w, const Instance& inst) { return validate_walk(w, inst, w.kind()); }

WalkReport validate_walk(const Walk& w, const Instance& inst, WalkKind kind) {
  const auto& pts = w.points();
  const auto& steps = w.steps();
  if (pts.size() != steps.size() + 1) return fail(kind, -1, "point count is not step count + 1");
  for (const Matrix& p : pts) {
    if (p.rows() != inst.m() || p.cols() != inst.n()) return fail(kind, -1, "point shape differs from the instance");
  }
  const bool feasible_steps = kind != WalkKind::kCD;
  const bool maximal_steps = kind == WalkKind::kCDfm || kind == WalkKind::kCDe;
  const bool edge_steps = kind == WalkKind::kCDe;

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int si = static_cast<int>(i);
    const WalkStep& s = steps[i];
    if (s.circuit.supplies_count() != inst.m() || s.circuit.demands_count() != inst.n()) {
      return fail(kind, si, "circuit shape differs from the instance");
    }
    if (s.alpha.sign() <= 0) return fail(kind, si, "step length " + s.alpha.str() + " is not positive");
    if (apply_step(pts[i], s.circuit, s.alpha) != pts[i + 1]) {
      return fail(kind, si, "point difference is not alpha times the circuit");
    }
    if (feasible_steps && !inst.is_feasible(pts[i + 1])) return fail(kind, si, "step leaves the polytope");
    if (maximal_steps) {
      const auto best = max_step(pts[i], s.circuit);
      if (!best || *best != s.alpha) {
        return fail(kind, si, "step length " + s.alpha.str() + " is not the maximal step " +
                                  (best ? best->str() : std::string("(none)")));
      }
    }
    if (edge_steps) {
      if (!is_vertex_of(inst, pts[i + 1])) return fail(kind, si, "step ends off the vertex set");
      if (!are_adjacent(Assignment(inst, pts[i]), Assignment(inst, pts[i + 1]))) {
        return fail(kind, si, "consecutive vertices are not adjacent");
      }
    }
  }

  if (kind == WalkKind::kCDs) {
    const Matrix diff = pts.back() - pts.front();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Matrix gi = steps[i].circuit.as_matrix();
      if (!sign_compatible(gi, diff)) {
        return fail(kind, static_cast<int>(i), "circuit is not sign-compatible with the endpoint difference");
      }
      for (std::size_t j = i + 1; j < steps.size(); ++j) {
        if (!sign_compatible(gi, steps[j].circuit.as_matrix())) {
          return fail(kind, static_cast<int>(j), "circuits " + std::to_string(i) + " and " + std::to_string(j) +
                                                     " are not sign-compatible");
        }
      }
    }
    Matrix total(inst.m(), inst.n());
    for (const WalkStep& s : steps) total = apply_step(total, s.circuit, s.alpha);
    if (total != diff) return fail(kind, -1, "steps do not sum to the endpoint difference");
  }

  if (!is_vertex_of(inst, pts.front()) || !is_vertex_of(inst, pts.back())) {
    return fail(kind, -1, "invalid endpoint: walks run between vertices");
  }
  return {true, kind, std::nullopt};
}

bool is_monotone(const Walk& w, const Matrix& cost) {
  for (std::size_t i = 0; i + 1 < w.points().size(); ++i) {
    if (objective(cost, w.points()[i + 1]) < objective(cost, w.points()[i])) return false;
  }
  return true;
}

}  // namespace tpd
