#include "tpd/construct.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <tuple>

#include "tpd/errors.hpp"
#include "tpd/polytope.hpp"

namespace tpd {

int ConstructedWalk::mark_only() const {
  return static_cast<int>(std::count_if(trace.begin(), trace.end(), [](const Transition& t) { return !t.pivot; }));
}

namespace {

void require_vertex(const Instance& inst, const Matrix& y, const char* what) {
  if (!inst.is_feasible(y)) throw InvalidArgument(std::string(what) + " is not feasible for the margins");
  if (!is_forest(support_graph(y))) throw InvalidArgument(std::string(what) + " is not a vertex");
}

void require_shape(const Instance& inst, int m, const char* algorithm) {
  if (inst.m() != m) {
    throw InvalidArgument(std::string(algorithm) + " needs " + std::to_string(m) + " supplies, got " +
                          std::to_string(inst.m()));
  }
}

void require_nondegenerate(const Instance& inst, const char* algorithm) {
  if (!is_nondegenerate(inst)) throw InvalidArgument(std::string(algorithm) + " needs non-degenerate margins");
}

bool is_leaf_edge(const EdgeSet& target, const Edge& e) {
  return target.contains(e) && is_leaf_demand(target, e.demand);
}

bool is_mixed_edge(const EdgeSet& target, const Edge& e) {
  return target.contains(e) && is_mixed_demand(target, e.demand);
}

// Performs the optional pivot and the mark, checking the marking rules.
Transition make_transition(const EdgeSet& target, const MarkState& state, std::string rule, int supply,
                           std::optional<Edge> insert, const Edge& mark) {
  Transition t{std::move(rule), supply, std::nullopt, mark, state};
  if (insert) {
    PivotResult p = pivot(state.current, *insert);
    if (p.deleted.size() != 1) throw InternalError("pivot in non-degenerate polytope deleted " +
                                                   std::to_string(p.deleted.size()) + " edges");
    for (const Edge& e : p.deleted) {
      if (state.marked.contains(e)) {
        throw InternalError("rule " + t.rule + " deleted marked edge " + e.str());
      }
    }
    t.next.current = p.result;
    t.pivot = std::move(p);
  }
  if (!can_mark(target, t.next, mark)) {
    throw InternalError("rule " + t.rule + " tried to mark " + mark.str() + " against the marking rules");
  }
  t.next.marked.insert(mark);
  return t;
}

Walk walk_from_trace(const Matrix& from, const std::vector<Transition>& trace) {
  Walk w(WalkKind::kCDe, from);
  for (const Transition& t : trace) {
    if (t.pivot) w.append(t.pivot->circuit, t.pivot->alpha);
  }
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Maximal-step walk for two supplies

Walk cdfm_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& to) {
  require_shape(inst, 2, "the 2×n circuit walk");
  require_vertex(inst, from, "start");
  require_vertex(inst, to, "target");
  const int n = inst.n();
  const EdgeSet fs = support_graph(to);
  Walk w(WalkKind::kCDfm, from);
  const int budget = (support_graph(from) - fs).size();
  for (int iter = 0; w.back() != to; ++iter) {
    if (iter >= budget) throw InternalError("2×n circuit walk exceeded |O\\F| steps");
    const Matrix& y = w.back();
    const EdgeSet cur = support_graph(y);
    const auto first_to_delete = [&](int i) -> std::optional<int> {
      for (int j = 0; j < n; ++j) {
        if (cur.contains({i, j}) && !fs.contains({i, j})) return j;
      }
      return std::nullopt;
    };
    const auto first_to_decrease = [&](int i) -> std::optional<int> {
      for (int j = 0; j < n; ++j) {
        if (y(i, j) > to(i, j)) return j;
      }
      return std::nullopt;
    };
    const auto del0 = first_to_delete(0);
    const auto del1 = first_to_delete(1);
    int j0 = 0;  // decreased edge at s_1
    int j1 = 0;  // decreased edge at s_2
    if (del0 && del1) {
      j0 = *del0;
      j1 = *del1;
    } else if (del1) {
      const auto dec = first_to_decrease(0);
      if (!dec) throw InternalError("supply 1 has no edge to decrease");
      j0 = *dec;
      j1 = *del1;
    } else if (del0) {
      const auto dec = first_to_decrease(1);
      if (!dec) throw InternalError("supply 2 has no edge to decrease");
      j0 = *del0;
      j1 = *dec;
    } else {
      throw InternalError("distinct vertices with no edge to delete");
    }
    if (j0 == j1) throw InternalError("both decreased edges meet the same demand");
    // Decrease (1,j0), (2,j1); increase (1,j1), (2,j0).
    const Circuit g(2, n, {0, 1}, {j1, j0});
    const auto alpha = max_step(y, g);
    if (!alpha) throw InternalError("chosen circuit has no feasible step");
    Matrix next = apply_step(y, g, *alpha);
    const EdgeSet after = support_graph(next);
    if (!(after - cur).is_subset_of(fs)) {
      throw InternalError("circuit step inserted an edge outside the target");
    }
    if (!(fs & cur).is_subset_of(after)) throw InternalError("circuit step deleted a target edge");
    if (((cur - fs) - after).empty()) throw InternalError("circuit step deleted no edge outside the target");
    w.append(g, *alpha);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Marking system

bool can_mark(const EdgeSet& target, const MarkState& state, const Edge& e) {
  if (!support_graph(state.current).contains(e) || !target.contains(e) || state.marked.contains(e)) return false;
  if (is_leaf_demand(target, e.demand)) return true;
  for (const Edge& f : target.supply_edges(e.supply)) {
    if (is_leaf_demand(target, f.demand) && !state.marked.contains(f)) return false;
  }
  return true;
}

bool marking_hypothesis(const MarkState& state, int supply) {
  const EdgeSet em = mixed_edges(support_graph(state.current));
  const int m = em.supplies();
  const int n = em.demands();
  std::vector<int> dist(static_cast<std::size_t>(m + n), -1);
  std::deque<int> queue{supply};
  dist[static_cast<std::size_t>(supply)] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    const auto edges = x < m ? em.supply_edges(x) : em.demand_edges(x - m);
    for (const Edge& e : edges) {
      const int y = x < m ? m + e.demand : e.supply;
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  for (const Edge& e : (em & state.marked).edges()) {
    const int ds = dist[static_cast<std::size_t>(e.supply)];
    const int dd = dist[static_cast<std::size_t>(m + e.demand)];
    if (ds < 0 || dd < 0) throw InternalError("mixed part of a vertex is disconnected");
    if ((std::min(ds, dd) + 1) % 2 != 0) return false;
  }
  return true;
}

Transition mark_pivot(const Instance& inst, const Matrix& target, const MarkState& state, int i) {
  if (inst.m() != 2 && inst.m() != 3) throw InvalidArgument("the marking lemma covers 2×n and 3×n polytopes");
  if (i < 0 || i >= inst.m()) throw InvalidArgument("supply index out of range");
  require_nondegenerate(inst, "the marking lemma");
  if (!marking_hypothesis(state, i)) {
    throw InvalidArgument("marked mixed edges are not all an even distance from supply " + std::to_string(i + 1));
  }
  const EdgeSet fs = support_graph(target);
  const EdgeSet cur = support_graph(state.current);
  const int n = inst.n();

  // (1) an unmarked leaf edge; one already present needs no pivot.
  std::optional<Edge> missing_leaf;
  for (int j = 0; j < n; ++j) {
    const Edge e{i, j};
    if (!is_leaf_edge(fs, e) || state.marked.contains(e)) continue;
    if (cur.contains(e)) return make_transition(fs, state, "lemma(1)", i, std::nullopt, e);
    if (!missing_leaf) missing_leaf = e;
  }
  if (missing_leaf) return make_transition(fs, state, "lemma(1)", i, missing_leaf, *missing_leaf);

  // (2) an unmarked target-mixed edge that is already present.
  std::vector<int> missing_mixed;
  for (int j = 0; j < n; ++j) {
    const Edge e{i, j};
    if (!is_mixed_edge(fs, e) || state.marked.contains(e)) continue;
    if (cur.contains(e)) return make_transition(fs, state, "lemma(2)", i, std::nullopt, e);
    missing_mixed.push_back(j);
  }

  // (3) a single target-mixed edge to insert.
  if (missing_mixed.size() == 1) {
    const Edge e{i, missing_mixed.front()};
    return make_transition(fs, state, "lemma(3)", i, e, e);
  }
  if (missing_mixed.size() != 2) {
    throw InternalError("supply " + std::to_string(i + 1) + " has " + std::to_string(missing_mixed.size()) +
                        " target-mixed edges to insert");
  }

  // (4) two target-mixed edges to insert (three supplies only).
  const auto marked_at = [&](int d) -> std::optional<int> {
    for (const Edge& e : state.marked.demand_edges(d)) return e.supply;
    return std::nullopt;
  };
  for (int d : missing_mixed) {
    if (!marked_at(d)) {
      const Edge e{i, d};
      return make_transition(fs, state, "lemma(4)", i, e, e);
    }
  }
  const int da = missing_mixed[0];
  const int db = missing_mixed[1];
  const int sa = *marked_at(da);
  const int sb = *marked_at(db);
  if (sa == sb) throw InternalError("two target-mixed demands marked from one supply");
  const EdgeSet em = mixed_edges(cur);
  for (const auto& [sj, dj, dother] : {std::tuple{std::min(sa, sb), sa < sb ? da : db, sa < sb ? db : da},
                                       std::tuple{std::max(sa, sb), sa < sb ? db : da, sa < sb ? da : db}}) {
    for (int dk = 0; dk < n; ++dk) {
      const Edge link{sj, dk};
      if (!em.contains(link) || !state.marked.contains(link) || !em.contains({i, dk})) continue;
      const bool lone = em.supply_degree(sj) == 1;
      const Edge e{i, lone ? dj : dother};
      return make_transition(fs, state, lone ? "lemma(4a)" : "lemma(4b)", i, e, e);
    }
  }
  throw InternalError("no marked path from supply " + std::to_string(i + 1) + " in step (4)");
}

// ---------------------------------------------------------------------------
// Two supplies

namespace {

ConstructedWalk run_2xn(const Instance& inst, const Matrix& from, const Matrix& to,
                        const std::function<int(const MarkState&, const std::vector<int>&)>& fallback) {
  const EdgeSet fs = support_graph(to);
  const EdgeSet em_target = mixed_edges(fs);
  MarkState state{from, EdgeSet(inst.m(), inst.n())};
  ConstructedWalk out{Walk(WalkKind::kCDe, from), {}};
  EdgeSet inserted_target(inst.m(), inst.n());
  for (int iter = 0;; ++iter) {
    if (iter > fs.size()) throw InternalError("2×n edge walk marked more edges than the target has");
    const EdgeSet cur = support_graph(state.current);
    const std::vector<int> dm = mixed_demands(cur);
    if (dm.size() != 1) throw InternalError("2×n vertex without exactly one mixed demand");
    std::vector<int> candidates;
    for (int i = 0; i < 2; ++i) {
      if (!state.marked.contains({i, dm.front()})) candidates.push_back(i);
    }
    if (candidates.empty()) {
      if (state.current != to) throw InternalError("both mixed edges marked before reaching the target");
      break;
    }
    std::optional<Transition> chosen;
    for (int i : candidates) {
      Transition t = mark_pivot(inst, to, state, i);
      if (!t.pivot) {
        chosen = std::move(t);
        break;
      }
    }
    if (!chosen) chosen = mark_pivot(inst, to, state, fallback(state, candidates));

    // Edges the protection argument keeps alive through this step.
    const EdgeSet em_cur = mixed_edges(cur);
    for (const Edge& e : (cur & em_target).edges()) {
      const bool leaf_now = is_leaf_demand(cur, e.demand);
      bool other_marked = false;
      if (em_cur == em_target) {
        for (const Edge& f : em_cur.edges()) {
          if (!(f == e) && state.marked.contains(f)) other_marked = true;
        }
      }
      if ((leaf_now || other_marked) && !support_graph(chosen->next.current).contains(e)) {
        throw InternalError("protected mixed edge " + e.str() + " was deleted");
      }
    }
    if (chosen->pivot) {
      for (const Edge& e : chosen->pivot->deleted) {
        if (inserted_target.contains(e)) throw InternalError("inserted target edge " + e.str() + " deleted again");
      }
      if (fs.contains(chosen->pivot->inserted)) inserted_target.insert(chosen->pivot->inserted);
    }
    state = chosen->next;
    out.trace.push_back(std::move(*chosen));
  }
  out.walk = walk_from_trace(from, out.trace);
  return out;
}

// Column order used by the 2×n optimum: s_1j - s_2j non-increasing, stable.
std::vector<int> greedy_order(const Matrix& cost) {
  std::vector<int> order(static_cast<std::size_t>(cost.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cost(0, a) - cost(1, a) > cost(0, b) - cost(1, b);
  });
  return order;
}

}  // namespace

ConstructedWalk edge_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& to) {
  require_shape(inst, 2, "the 2×n edge walk");
  require_nondegenerate(inst, "the 2×n edge walk");
  require_vertex(inst, from, "start");
  require_vertex(inst, to, "target");
  return run_2xn(inst, from, to, [](const MarkState&, const std::vector<int>& c) { return c.front(); });
}

Matrix lp_optimum_2xn(const Instance& inst, const Matrix& cost) {
  require_shape(inst, 2, "the 2×n optimum");
  require_nondegenerate(inst, "the 2×n optimum");
  if (cost.rows() != 2 || cost.cols() != inst.n()) throw InvalidArgument("cost shape differs from the instance");
  Matrix y(2, inst.n());
  Rational acc;
  bool split = false;
  for (int j : greedy_order(cost)) {
    const Rational& vj = inst.v()[static_cast<std::size_t>(j)];
    if (split) {
      y(1, j) = vj;
    } else if (acc + vj < inst.u()[0]) {
      y(0, j) = vj;
      acc += vj;
    } else {
      y(0, j) = inst.u()[0] - acc;
      y(1, j) = vj - y(0, j);
      split = true;
    }
  }
  if (!inst.is_feasible(y)) throw InternalError("greedy optimum is infeasible");
  return y;
}

ConstructedWalk monotone_walk_2xn(const Instance& inst, const Matrix& from, const Matrix& cost) {
  require_shape(inst, 2, "the monotone 2×n walk");
  require_nondegenerate(inst, "the monotone 2×n walk");
  require_vertex(inst, from, "start");
  const Matrix to = lp_optimum_2xn(inst, cost);
  const std::vector<int> order = greedy_order(cost);
  std::vector<int> position(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  const int j = position[static_cast<std::size_t>(mixed_demands(support_graph(to)).front())];
  return run_2xn(inst, from, to, [&](const MarkState& state, const std::vector<int>& candidates) {
    const int q = position[static_cast<std::size_t>(mixed_demands(support_graph(state.current)).front())];
    if (q == j) return candidates.front();
    const int supply = q < j ? 1 : 0;
    if (std::find(candidates.begin(), candidates.end(), supply) == candidates.end()) {
      throw InternalError("monotone rule picked a supply whose mixed edge is marked");
    }
    return supply;
  });
}

// ---------------------------------------------------------------------------
// Three supplies

namespace {

// Mixed part end_a - dA - mid - dB - end_b of a 3×n vertex with two mixed demands.
struct MixedPath {
  int a = 0;
  int mid = 0;
  int b = 0;
  int da = 0;
  int db = 0;

  Edge e1() const { return {a, da}; }
  Edge e2() const { return {mid, da}; }
  Edge e3() const { return {mid, db}; }
  Edge e4() const { return {b, db}; }
  MixedPath reflected() const { return {b, mid, a, db, da}; }
  int mask(const EdgeSet& marked) const {
    return (marked.contains(e1()) ? 1 : 0) | (marked.contains(e2()) ? 2 : 0) | (marked.contains(e3()) ? 4 : 0) |
           (marked.contains(e4()) ? 8 : 0);
  }
};

MixedPath mixed_path(const EdgeSet& cur, int da, int db) {
  MixedPath p;
  p.da = da;
  p.db = db;
  const auto at_a = cur.demand_edges(da);
  const auto at_b = cur.demand_edges(db);
  if (at_a.size() != 2 || at_b.size() != 2) throw InternalError("mixed demands of a 3×n vertex need degree 2");
  bool found = false;
  for (const Edge& x : at_a) {
    for (const Edge& y : at_b) {
      if (x.supply == y.supply) {
        p.mid = x.supply;
        found = true;
      }
    }
  }
  if (!found) throw InternalError("mixed demands share no supply");
  p.a = at_a[0].supply == p.mid ? at_a[1].supply : at_a[0].supply;
  p.b = at_b[0].supply == p.mid ? at_b[1].supply : at_b[0].supply;
  return p;
}

// Next transition of the three-supply walk, or nullopt once everything is marked.
std::optional<Transition> dispatch_3xn(const Instance& inst, const Matrix& to, const EdgeSet& fs,
                                       const MarkState& state) {
  const EdgeSet cur = support_graph(state.current);
  const std::vector<int> dm = mixed_demands(cur);
  const auto lemma = [&](int supply, const std::string& label) {
    Transition t = mark_pivot(inst, to, state, supply);
    t.rule = label + ":" + t.rule;
    return t;
  };
  const auto done = [&](const std::string& label) -> std::optional<Transition> {
    if (state.current != to) throw InternalError("case " + label + " reached away from the target");
    return std::nullopt;
  };

  if (dm.size() == 1) {
    const int d = dm.front();
    for (int i = 0; i < 3; ++i) {
      if (!state.marked.contains({i, d})) return lemma(i, "D1");
    }
    return done("D1 with 3 marks");
  }
  if (dm.size() != 2) throw InternalError("3×n vertex with " + std::to_string(dm.size()) + " mixed demands");

  MixedPath p = mixed_path(cur, dm[0], dm[1]);
  const int mask = p.mask(state.marked);
  switch (std::popcount(static_cast<unsigned>(mask))) {
    case 0:
      return lemma(std::min(p.a, p.b), "0");
    case 1:
      if (mask & (2 | 4)) {
        if (mask & 4) p = p.reflected();
        return lemma(p.a, "1b");
      }
      if (mask & 8) p = p.reflected();
      return lemma(p.b, "1a");
    case 2: {
      if (mask == (2 | 4)) throw InternalError("case 2c reached");
      if (mask == (1 | 8)) return lemma(p.mid, "2a(ii)");
      if (mask == (1 | 4) || mask == (2 | 8)) {
        if (mask == (2 | 8)) p = p.reflected();
        return lemma(p.b, "2a(i)");
      }
      if (mask == (4 | 8)) p = p.reflected();
      // 2b: both edges at dA are marked.
      if (is_leaf_demand(fs, p.db)) return make_transition(fs, state, "2b(1)", -1, std::nullopt, p.e4());
      if (fs.contains(p.e3())) return make_transition(fs, state, "2b(2)", -1, std::nullopt, p.e3());
      const Edge e{p.a, p.db};
      return make_transition(fs, state, "2b(2)", -1, e, e);
    }
    case 3: {
      if (!(mask & 1) || !(mask & 8)) {
        if (!(mask & 1)) p = p.reflected();
        // 3a: e4 unmarked; dB must be mixed in the target.
        if (!is_mixed_demand(fs, p.db)) throw InternalError("case 3a entered with d2 not mixed in the target");
        std::optional<Edge> with_mid;
        std::optional<Edge> any_missing;
        for (int j = 0; j < inst.n(); ++j) {
          const Edge e{p.b, j};
          if (!is_leaf_edge(fs, e) || state.marked.contains(e)) continue;
          if (cur.contains(e)) return make_transition(fs, state, "3a(0)", -1, std::nullopt, e);
          if (!with_mid && cur.contains({p.mid, j})) with_mid = e;
          if (!any_missing) any_missing = e;
        }
        if (with_mid) return make_transition(fs, state, "3a(1)", -1, with_mid, *with_mid);
        if (any_missing) return make_transition(fs, state, "3a(2)", -1, any_missing, *any_missing);
        return make_transition(fs, state, "3a(3)", -1, std::nullopt, p.e4());
      }
      if (!(mask & 2)) p = p.reflected();
      // 3b: e3 unmarked, e1, e2, e4 marked.
      if (is_mixed_demand(fs, p.db)) {
        if (fs.contains(p.e3())) return make_transition(fs, state, "3b(1)", -1, std::nullopt, p.e3());
        const Edge e{p.a, p.db};
        return make_transition(fs, state, "3b(1)", -1, e, e);
      }
      for (int j = 0; j < inst.n(); ++j) {
        if (j == p.db || !cur.contains({p.b, j}) || !is_mixed_demand(fs, j)) continue;
        const bool via_a = fs.contains({p.a, j});
        const bool via_mid = fs.contains({p.mid, j});
        if (via_a == via_mid) throw InternalError("case 3b(2) found no unique edge to insert");
        const Edge e{via_a ? p.a : p.mid, j};
        return make_transition(fs, state, "3b(2)", -1, e, e);
      }
      throw InternalError("case 3b(2) found no leaf edge of s3 that is mixed in the target");
    }
    default:
      return done("4 marks");
  }
}

}  // namespace

ConstructedWalk edge_walk_3xn(const Instance& inst, const Matrix& from, const Matrix& to) {
  require_shape(inst, 3, "the 3×n edge walk");
  require_nondegenerate(inst, "the 3×n edge walk");
  require_vertex(inst, from, "start");
  require_vertex(inst, to, "target");
  const EdgeSet fs = support_graph(to);
  MarkState state{from, EdgeSet(inst.m(), inst.n())};
  ConstructedWalk out{Walk(WalkKind::kCDe, from), {}};
  for (int iter = 0;; ++iter) {
    if (iter > fs.size()) throw InternalError("3×n edge walk marked more edges than the target has");
    auto t = dispatch_3xn(inst, to, fs, state);
    if (!t) break;
    if (!state.marked.is_subset_of(t->next.marked) || !t->next.marked.is_subset_of(support_graph(t->next.current))) {
      throw InternalError("rule " + t->rule + " lost a marked edge");
    }
    state = t->next;
    out.trace.push_back(std::move(*t));
  }
  out.walk = walk_from_trace(from, out.trace);
  return out;
}

}  // namespace tpd
