#include "tpd/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "tpd/circuits.hpp"
#include "tpd/construct.hpp"
#include "tpd/errors.hpp"
#include "tpd/parallel.hpp"
#include "tpd/walks.hpp"

namespace tpd {

namespace {

// Counts checks and keeps the first failure.
struct Tally {
  long checks = 0;
  long skipped = 0;
  long traps = 0;
  std::string failure;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what();
  }
  void merge(const Tally& o) {
    checks += o.checks;
    skipped += o.skipped;
    traps += o.traps;
    if (failure.empty()) failure = o.failure;
  }
};

std::string str(int x) { return std::to_string(x); }

std::string margins(const Instance& inst) {
  std::ostringstream os;
  os << "u=(";
  for (std::size_t i = 0; i < inst.u().size(); ++i) os << (i ? "," : "") << inst.u()[i];
  os << ") v=(";
  for (std::size_t j = 0; j < inst.v().size(); ++j) os << (j ? "," : "") << inst.v()[j];
  os << ")";
  return os.str();
}

std::string pair_text(const Instance& inst, const Matrix& o, const Matrix& f) {
  return margins(inst) + " O=" + o.str() + " F=" + f.str();
}

std::string report_text(const WalkReport& r) {
  return r.violation ? "step " + str(r.violation->step) + ": " + r.violation->reason : "valid";
}

// Runs `body` per item on the worker pool and merges tallies in index order.
Tally sweep(std::size_t count, int workers, const std::function<void(std::size_t, Tally&)>& body) {
  std::vector<Tally> parts(count);
  parallel_for(count, workers, [&](std::size_t i) { body(i, parts[i]); });
  Tally total;
  for (const Tally& t : parts) total.merge(t);
  return total;
}

CriterionResult finish(int id, std::string title, const Tally& t, const std::string& summary) {
  CriterionResult r{id, std::move(title), t.failure.empty(), ""};
  r.detail = summary + ", " + std::to_string(t.checks) + " checks";
  if (t.skipped) r.detail += ", " + std::to_string(t.skipped) + " skipped by caps";
  if (!t.failure.empty()) r.detail += "; first failure: " + t.failure;
  return r;
}

// Random populations shared between criteria. Instance t of a population has
// n = 3 + t % 3 demands and its own generator stream.
struct Member {
  Instance inst;
  std::uint64_t seed;
};

std::vector<Member> population(int m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Member> out;
  for (int t = 0; t < count; ++t) {
    const int n = 3 + t % 3;
    Instance inst = random_instance(m, n, rng);
    out.push_back({inst, rng()});
  }
  return out;
}

std::vector<Member> population_2xn(const VerifyOptions& o) { return population(2, 200, o.seed * 4 + 1); }
std::vector<Member> population_3xn(const VerifyOptions& o) { return population(3, 100, o.seed * 4 + 2); }

int pair_budget_2xn(int n) { return n <= 4 ? -1 : 50; }
int pair_budget_3xn(int n) { return n == 3 ? -1 : 30; }

SearchLimits limits(const VerifyOptions& o) { return {-1, o.max_states}; }

// Runs `fn`, turning construction traps into failures.
template <typename Fn>
void guarded(Tally& t, const std::string& context, Fn&& fn) {
  try {
    fn();
  } catch (const InternalError& e) {
    ++t.traps;
    t.expect(false, [&] { return "trap in " + context + ": " + e.what(); });
  } catch (const InvalidArgument& e) {
    t.expect(false, [&] { return "rejected " + context + ": " + e.what(); });
  }
}

// Independent check that no pivot of the trace removed an edge marked before it.
bool marks_respected(const ConstructedWalk& w, const EdgeSet& initial) {
  EdgeSet marked = initial;
  for (const Transition& t : w.trace) {
    if (t.pivot) {
      for (const Edge& e : t.pivot->deleted) {
        if (marked.contains(e)) return false;
      }
    }
    if (!marked.is_subset_of(t.next.marked)) return false;
    marked = t.next.marked;
  }
  return true;
}

// ---------------------------------------------------------------------------

CriterionResult criterion_example1(const VerifyOptions& o) {
  Tally t;
  const GeneratedCase c = gen_example1();
  const VertexGraph g = build_vertex_graph(c.instance, o.max_trees);
  const auto circuits = enumerate_circuits(2, 3);
  const int gd = graph_distance(g, c.from, c.to);
  const auto fm = cdfm_distance(c.from, c.to, circuits, limits(o));
  const int ed = edge_distance(Assignment(c.instance, c.from), Assignment(c.instance, c.to));
  int edge_len = -1;
  int cdfm_len = -1;
  guarded(t, "example 1", [&] {
    const ConstructedWalk ew = edge_walk_2xn(c.instance, c.from, c.to);
    const Walk fw = cdfm_walk_2xn(c.instance, c.from, c.to);
    t.expect(validate_walk(ew.walk, c.instance).valid, [] { return std::string("edge walk does not validate"); });
    t.expect(validate_walk(fw, c.instance).valid, [] { return std::string("CD_fm walk does not validate"); });
    edge_len = ew.walk.length();
    cdfm_len = fw.length();
  });
  t.expect(gd == 3, [&] { return "graph distance " + str(gd); });
  t.expect(fm == 1, [&] { return "CD_fm distance " + (fm ? str(*fm) : std::string("beyond cap")); });
  t.expect(ed == 2, [&] { return "edge distance " + str(ed); });
  t.expect(edge_len == 3, [&] { return "edge walk length " + str(edge_len); });
  t.expect(cdfm_len == 1, [&] { return "CD_fm walk length " + str(cdfm_len); });
  return finish(1, "example 2x3 reproduction", t,
                "CD_e=" + str(gd) + " CD_fm=" + (fm ? str(*fm) : "?") + " |O\\F|=" + str(ed) +
                    " edge walk " + str(edge_len) + " CD_fm walk " + str(cdfm_len));
}

CriterionResult criterion_coincide(const VerifyOptions& o) {
  Tally total;
  std::vector<std::string> parts;
  for (int n = 2; n <= 6; ++n) {
    Tally t;
    const GeneratedCase c = gen_coincide(n);
    std::string part = "n=" + str(n) + ":";
    // Every circuit of a 2×n polytope raises exactly one edge at each supply,
    // so a walk needs at least as many steps as F has edges at s1 missing in O.
    int needed = 0;
    for (int j = 0; j < n; ++j) needed += (c.to(0, j).sign() > 0 && c.from(0, j).is_zero()) ? 1 : 0;
    t.expect(needed == n - 1, [&] { return "n=" + str(n) + ": " + str(needed) + " insertions needed at s1"; });
    if (n <= 4) {
      const auto fm = cdfm_distance(c.from, c.to, enumerate_circuits(2, n), limits(o));
      t.expect(fm == n - 1, [&] { return "n=" + str(n) + ": CD_fm oracle " + (fm ? str(*fm) : std::string("?")); });
      part += " CD_fm=" + (fm ? str(*fm) : std::string("?"));
    }
    guarded(t, "coincide n=" + str(n), [&] {
      const Walk w = cdfm_walk_2xn(c.instance, c.from, c.to);
      const WalkReport r = validate_walk(w, c.instance, WalkKind::kCDfm);
      t.expect(r.valid, [&] { return "n=" + str(n) + ": CD_fm walk " + report_text(r); });
      t.expect(w.length() == n - 1 && w.length() >= needed,
               [&] { return "n=" + str(n) + ": CD_fm walk length " + str(w.length()); });
      part += " walk=" + str(w.length()) + ">=" + str(needed);
    });
    const VertexGraph g = build_vertex_graph(c.instance, o.max_trees);
    if (n <= 5) {
      const int diam = graph_diameter(g, o.workers);
      t.expect(diam == n - 1, [&] { return "n=" + str(n) + ": graph diameter " + str(diam); });
      part += " diam=" + str(diam);
    }
    const EdgeSet crit = critical_edges(g.vertices, 2, n);
    const EdgeSet want(2, n, {{0, 0}, {1, 0}});
    t.expect(crit == want, [&] { return "n=" + str(n) + ": critical edges " + crit.str(); });
    parts.push_back(part + " crit=" + crit.str());
    total.merge(t);
  }
  std::string summary;
  for (const auto& p : parts) summary += (summary.empty() ? "" : "; ") + p;
  return finish(2, "coinciding diameters n=2..6", total, summary);
}

CriterionResult criterion_diameter_n(const VerifyOptions& o) {
  Tally t;
  std::string summary;
  for (int n = 3; n <= 4; ++n) {
    const GeneratedCase c = gen_diameter_n(n);
    const VertexGraph g = build_vertex_graph(c.instance, o.max_trees);
    const int d = graph_distance(g, c.from, c.to);
    const HirschData h = hirsch_data(g.vertices, 2, n);
    t.expect(d == n, [&] { return "n=" + str(n) + ": graph distance " + str(d); });
    t.expect(d <= h.bound, [&] { return "n=" + str(n) + ": distance above the bound " + str(h.bound); });
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + str(n) + " CD_e=" + str(d);
  }
  return finish(3, "2xn lower-bound example", t, summary);
}

CriterionResult criterion_cdfm_2xn(const VerifyOptions& o) {
  const auto pop = population_2xn(o);
  long pairs = 0;
  std::vector<long> pair_counts(pop.size());
  const Tally t = sweep(pop.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Member& mem = pop[idx];
    const int n = mem.inst.n();
    const VertexSet vs = enumerate_vertices(mem.inst, o.max_trees);
    const auto ps = vertex_pairs(vs.size(), pair_budget_2xn(n), mem.seed);
    pair_counts[idx] = static_cast<long>(ps.size());
    const auto circuits = enumerate_circuits(2, n);
    // One oracle BFS per source covers all of its targets.
    std::map<int, std::vector<int>> by_source;
    for (const auto& [a, b] : ps) by_source[a].push_back(b);
    for (const auto& [a, targets] : by_source) {
      std::vector<Matrix> tm;
      for (int b : targets) tm.push_back(vs.vertices[static_cast<std::size_t>(b)].flows());
      std::vector<std::optional<int>> oracle;
      try {
        oracle = cdfm_distances(vs.vertices[static_cast<std::size_t>(a)].flows(), tm, circuits, limits(o));
      } catch (const ResourceLimitError&) {
        oracle.assign(tm.size(), std::nullopt);
        t.skipped += static_cast<long>(tm.size());
      }
      const Matrix& from = vs.vertices[static_cast<std::size_t>(a)].flows();
      for (std::size_t q = 0; q < tm.size(); ++q) {
        const Matrix& to = tm[q];
        guarded(t, "CD_fm walk " + pair_text(mem.inst, from, to), [&] {
          const Walk w = cdfm_walk_2xn(mem.inst, from, to);
          const WalkReport r = validate_walk(w, mem.inst, WalkKind::kCDfm);
          t.expect(r.valid, [&] { return report_text(r) + " for " + pair_text(mem.inst, from, to); });
          t.expect(w.length() <= n - 1,
                   [&] { return "length " + str(w.length()) + " > n-1 for " + pair_text(mem.inst, from, to); });
          if (oracle[q]) {
            t.expect(w.length() >= *oracle[q], [&] {
              return "length " + str(w.length()) + " below oracle " + str(*oracle[q]) + " for " +
                     pair_text(mem.inst, from, to);
            });
          }
        });
      }
    }
  });
  for (long c : pair_counts) pairs += c;
  return finish(4, "2xn maximal-step walks", t, str(static_cast<int>(pop.size())) + " instances, " +
                                                    std::to_string(pairs) + " pairs");
}

CriterionResult criterion_edge_2xn(const VerifyOptions& o) {
  const auto pop = population_2xn(o);
  std::vector<long> pair_counts(pop.size());
  const Tally t = sweep(pop.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Member& mem = pop[idx];
    const int n = mem.inst.n();
    const VertexGraph g = build_vertex_graph(mem.inst, o.max_trees);
    const HirschData h = hirsch_data(g.vertices, 2, n);
    const auto ps = vertex_pairs(g.size(), pair_budget_2xn(n), mem.seed);
    pair_counts[idx] = static_cast<long>(ps.size());
    const int bound = std::min(n, n + 1 - h.k);
    std::map<int, std::vector<int>> dist;
    for (const auto& [a, b] : ps) {
      if (!dist.contains(a)) dist[a] = bfs_distances(g, a);
      const Matrix& from = g.vertices.vertices[static_cast<std::size_t>(a)].flows();
      const Matrix& to = g.vertices.vertices[static_cast<std::size_t>(b)].flows();
      guarded(t, "2xn edge walk " + pair_text(mem.inst, from, to), [&] {
        const ConstructedWalk w = edge_walk_2xn(mem.inst, from, to);
        const WalkReport r = validate_walk(w.walk, mem.inst, WalkKind::kCDe);
        const int len = w.walk.length();
        const int bfs = dist[a][static_cast<std::size_t>(b)];
        t.expect(r.valid, [&] { return report_text(r) + " for " + pair_text(mem.inst, from, to); });
        t.expect(len <= bound,
                 [&] { return "length " + str(len) + " > " + str(bound) + " for " + pair_text(mem.inst, from, to); });
        t.expect(marks_respected(w, EdgeSet(2, n)),
                 [&] { return "marked edge deleted for " + pair_text(mem.inst, from, to); });
        t.expect(bfs <= len,
                 [&] { return "BFS " + str(bfs) + " > length " + str(len) + " for " + pair_text(mem.inst, from, to); });
      });
    }
  });
  long pairs = 0;
  for (long c : pair_counts) pairs += c;
  return finish(5, "2xn edge walks", t, str(static_cast<int>(pop.size())) + " instances, " +
                                            std::to_string(pairs) + " pairs, traps " + std::to_string(t.traps));
}

CriterionResult criterion_monotone(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed * 4 + 3);
  struct Trial {
    Instance inst;
    Matrix cost;
    std::uint64_t seed;
  };
  std::vector<Trial> trials;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 3;
    Instance inst = random_instance(2, n, rng);
    Matrix cost = random_cost(2, n, rng);
    trials.push_back({inst, cost, rng()});
  }
  std::vector<long> runs(trials.size());
  const Tally t = sweep(trials.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Trial& tr = trials[idx];
    const int n = tr.inst.n();
    const VertexSet vs = enumerate_vertices(tr.inst, o.max_trees);
    Rational best = objective(tr.cost, vs.vertices.front().flows());
    for (const Assignment& a : vs.vertices) best = std::max(best, objective(tr.cost, a.flows()));
    std::vector<int> starts(static_cast<std::size_t>(vs.size()));
    for (int v = 0; v < vs.size(); ++v) starts[static_cast<std::size_t>(v)] = v;
    if (n == 5 && starts.size() > 20) {
      std::mt19937_64 pick(tr.seed);
      std::shuffle(starts.begin(), starts.end(), pick);
      starts.resize(20);
      std::sort(starts.begin(), starts.end());
    }
    runs[idx] = static_cast<long>(starts.size());
    for (int s : starts) {
      const Matrix& from = vs.vertices[static_cast<std::size_t>(s)].flows();
      guarded(t, "monotone walk " + margins(tr.inst) + " cost " + tr.cost.str() + " from " + from.str(), [&] {
        const ConstructedWalk w = monotone_walk_2xn(tr.inst, from, tr.cost);
        const WalkReport r = validate_walk(w.walk, tr.inst, WalkKind::kCDe);
        const Rational end = objective(tr.cost, w.walk.back());
        const auto ctx = [&] { return margins(tr.inst) + " cost " + tr.cost.str() + " from " + from.str(); };
        t.expect(r.valid, [&] { return report_text(r) + " for " + ctx(); });
        t.expect(end == best, [&] { return "end objective " + end.str() + " != max " + best.str() + " for " + ctx(); });
        t.expect(is_monotone(w.walk, tr.cost), [&] { return "objective decreases for " + ctx(); });
        t.expect(w.walk.length() <= n, [&] { return "length " + str(w.walk.length()) + " > n for " + ctx(); });
      });
    }
  });
  long total = 0;
  for (long r : runs) total += r;
  return finish(6, "2xn monotone walks", t, "200 trials, " + std::to_string(total) + " walks");
}

CriterionResult criterion_edge_3xn(const VerifyOptions& o) {
  const auto pop = population_3xn(o);
  std::vector<long> pair_counts(pop.size());
  int diameters = 0;
  std::vector<int> diam_checked(pop.size());
  const Tally t = sweep(pop.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Member& mem = pop[idx];
    const int n = mem.inst.n();
    const VertexGraph g = build_vertex_graph(mem.inst, o.max_trees);
    const HirschData h = hirsch_data(g.vertices, 3, n);
    const int bound = n + 2 - h.k;
    const auto ps = vertex_pairs(g.size(), pair_budget_3xn(n), mem.seed);
    pair_counts[idx] = static_cast<long>(ps.size());
    std::map<int, std::vector<int>> dist;
    for (const auto& [a, b] : ps) {
      if (!dist.contains(a)) dist[a] = bfs_distances(g, a);
      const Matrix& from = g.vertices.vertices[static_cast<std::size_t>(a)].flows();
      const Matrix& to = g.vertices.vertices[static_cast<std::size_t>(b)].flows();
      guarded(t, "3xn edge walk " + pair_text(mem.inst, from, to), [&] {
        const ConstructedWalk w = edge_walk_3xn(mem.inst, from, to);
        const WalkReport r = validate_walk(w.walk, mem.inst, WalkKind::kCDe);
        const int len = w.walk.length();
        const int bfs = dist[a][static_cast<std::size_t>(b)];
        t.expect(r.valid, [&] { return report_text(r) + " for " + pair_text(mem.inst, from, to); });
        t.expect(len <= bound,
                 [&] { return "length " + str(len) + " > " + str(bound) + " for " + pair_text(mem.inst, from, to); });
        t.expect(marks_respected(w, EdgeSet(3, n)),
                 [&] { return "marked edge deleted for " + pair_text(mem.inst, from, to); });
        t.expect(bfs <= len,
                 [&] { return "BFS " + str(bfs) + " > length " + str(len) + " for " + pair_text(mem.inst, from, to); });
      });
    }
    if (n <= 4) {
      const int diam = all_pairs_distances(g).diameter();
      t.expect(diam <= bound, [&] { return "diameter " + str(diam) + " > " + str(bound) + " for " + margins(mem.inst); });
      diam_checked[idx] = 1;
    }
  });
  long pairs = 0;
  for (long c : pair_counts) pairs += c;
  for (int d : diam_checked) diameters += d;
  return finish(7, "3xn edge walks", t, str(static_cast<int>(pop.size())) + " instances, " + std::to_string(pairs) +
                                            " pairs, " + str(diameters) + " diameters, traps " +
                                            std::to_string(t.traps));
}

void check_decomposition(Tally& t, const Instance& inst, const Matrix& from, const Matrix& to) {
  const Decomposition d = sign_compatible_decomposition(from, to);
  const Walk w = decomposition_walk(from, d);
  const WalkReport r = validate_walk(w, inst, WalkKind::kCDs);
  Matrix sum = from;
  for (const DecompositionTerm& term : d) sum = apply_step(sum, term.circuit, term.coefficient);
  t.expect(static_cast<int>(d.size()) <= inst.m() + inst.n() - 1,
           [&] { return str(static_cast<int>(d.size())) + " terms for " + pair_text(inst, from, to); });
  t.expect(r.valid, [&] { return report_text(r) + " for " + pair_text(inst, from, to); });
  t.expect(sum == to, [&] { return "terms do not add up for " + pair_text(inst, from, to); });
  for (const Matrix& p : w.points()) {
    t.expect(inst.is_feasible(p), [&] { return "partial sum infeasible for " + pair_text(inst, from, to); });
  }
}

CriterionResult criterion_decomposition(const VerifyOptions& o) {
  std::vector<Member> members = population_2xn(o);
  const std::size_t two = members.size();
  for (Member& m : population_3xn(o)) members.push_back(std::move(m));
  std::mt19937_64 rng(o.seed * 4 + 4);
  const std::size_t base = members.size();
  for (int t = 0; t < 20; ++t) members.push_back({random_instance(4, 4 + t % 2, rng), rng()});
  std::vector<long> pair_counts(members.size());
  const Tally t = sweep(members.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Member& mem = members[idx];
    const int n = mem.inst.n();
    const VertexSet vs = enumerate_vertices(mem.inst, o.max_trees);
    const int budget = idx < two ? pair_budget_2xn(n) : idx < base ? pair_budget_3xn(n) : 1;
    const auto ps = vertex_pairs(vs.size(), budget, mem.seed);
    pair_counts[idx] = static_cast<long>(ps.size());
    for (const auto& [a, b] : ps) {
      guarded(t, "decomposition", [&] {
        check_decomposition(t, mem.inst, vs.vertices[static_cast<std::size_t>(a)].flows(),
                            vs.vertices[static_cast<std::size_t>(b)].flows());
      });
    }
  });
  long pairs = 0;
  for (long c : pair_counts) pairs += c;
  return finish(8, "sign-compatible decompositions", t,
                std::to_string(pairs) + " pairs over " + str(static_cast<int>(members.size())) + " instances");
}

CriterionResult criterion_lower_bound(const VerifyOptions& o) {
  Tally t;
  std::string summary;
  for (const auto& [m, n] : {std::pair{2, 3}, {3, 3}, {3, 4}}) {
    const std::string name = str(m) + "x" + str(n);
    try {
      const GeneratedCase base = gen_hirsch_sharp(m, n);
      const int k = std::min((m - 1) * (n - 1), m + n - 1);
      const GeneratedCase p = perturb_certified(base, Rational(1, 1024), 16, o.max_solves);
      const auto circuits = enumerate_circuits(m, n);
      const bool below = cd_at_most(p.from, p.to, k - 1, circuits, o.max_solves);
      const bool at = cd_at_most(p.from, p.to, k, circuits, o.max_solves);
      t.expect(!below, [&] { return name + ": " + str(k - 1) + " circuits suffice"; });
      t.expect(at, [&] { return name + ": " + str(k) + " circuits do not suffice"; });
      t.expect(p.instance.is_feasible(p.from) && p.instance.is_feasible(p.to) &&
                   is_forest(support_graph(p.from)) && is_forest(support_graph(p.to)),
               [&] { return name + ": perturbed endpoints are not vertices"; });
      summary += (summary.empty() ? "" : ", ") + name + " k=" + str(k) + " eps=" + p.eps.str();
    } catch (const ResourceLimitError& e) {
      ++t.skipped;
      t.expect(false, [&] { return name + ": " + e.what(); });
    }
  }
  return finish(9, "circuit-distance lower bound", t, summary);
}

CriterionResult criterion_hierarchy(const VerifyOptions& o) {
  struct Job {
    std::string name;
    Instance inst;
    std::optional<std::pair<Matrix, Matrix>> only;  // a single named pair, else all pairs
  };
  std::vector<Job> jobs;
  for (const GeneratedCase& c :
       {gen_example1(), gen_coincide(3), gen_coincide(4), gen_diameter_n(3), gen_diameter_n(4),
        gen_hirsch_sharp(2, 3), gen_hirsch_sharp(2, 4), gen_hirsch_sharp(3, 3)}) {
    jobs.push_back({c.name, c.instance, std::pair{c.from, c.to}});
  }
  std::mt19937_64 rng(o.seed * 4 + 5);
  for (const auto& [m, n, count] : {std::tuple{2, 3, 10}, {2, 4, 6}, {3, 3, 4}}) {
    for (int r = 0; r < count; ++r) jobs.push_back({"random " + str(m) + "x" + str(n), random_instance(m, n, rng), {}});
  }
  std::vector<long> pair_counts(jobs.size());
  const Tally t = sweep(jobs.size(), o.workers, [&](std::size_t idx, Tally& t) {
    const Job& job = jobs[idx];
    const int m = job.inst.m();
    const int n = job.inst.n();
    const bool nondegenerate = is_nondegenerate(job.inst);
    const VertexGraph g = build_vertex_graph(job.inst, o.max_trees);
    const auto circuits = enumerate_circuits(m, n);
    std::vector<std::pair<int, int>> ps;
    if (job.only) {
      ps.push_back({g.vertices.find(job.only->first), g.vertices.find(job.only->second)});
    } else {
      ps = vertex_pairs(g.size(), -1, 0);
    }
    pair_counts[idx] = static_cast<long>(ps.size());
    std::map<int, std::vector<std::optional<int>>> fm_from;
    std::map<int, std::vector<int>> bfs_from;
    std::vector<Matrix> all;
    for (const Assignment& a : g.vertices.vertices) all.push_back(a.flows());
    for (const auto& [a, b] : ps) {
      if (!bfs_from.contains(a)) {
        bfs_from[a] = bfs_distances(g, a);
        try {
          fm_from[a] = cdfm_distances(all[static_cast<std::size_t>(a)], all, circuits, limits(o));
        } catch (const ResourceLimitError&) {
          fm_from[a].assign(all.size(), std::nullopt);
        }
      }
      const Matrix& from = all[static_cast<std::size_t>(a)];
      const Matrix& to = all[static_cast<std::size_t>(b)];
      const auto ctx = [&] { return job.name + " " + pair_text(job.inst, from, to); };
      const int ce = bfs_from[a][static_cast<std::size_t>(b)];
      const std::optional<int> cfm = fm_from[a][static_cast<std::size_t>(b)];
      if (!cfm) {
        ++t.skipped;
        continue;
      }
      int cd = -1;
      try {
        cd = min_cd(from, to, circuits, o.max_solves);
      } catch (const ResourceLimitError&) {
        ++t.skipped;
        continue;
      }
      t.expect(ce >= *cfm && *cfm >= cd, [&] {
        return "CD_e=" + str(ce) + " CD_fm=" + str(*cfm) + " CD=" + str(cd) + " out of order for " + ctx();
      });
      guarded(t, "constructions for " + ctx(), [&] {
        const Decomposition d = sign_compatible_decomposition(from, to);
        const int terms = static_cast<int>(d.size());
        t.expect(cd <= terms && terms <= m + n - 1, [&] { return str(terms) + " terms vs CD=" + str(cd) + " for " + ctx(); });
        if (m == 2) {
          const int fl = cdfm_walk_2xn(job.inst, from, to).length();
          t.expect(*cfm <= fl && fl <= n - 1, [&] { return "CD_fm walk " + str(fl) + " vs " + str(*cfm) + " for " + ctx(); });
        }
        if (nondegenerate) {
          const HirschData h = hirsch_data(g.vertices, m, n);
          const int el = m == 2 ? edge_walk_2xn(job.inst, from, to).walk.length()
                                : edge_walk_3xn(job.inst, from, to).walk.length();
          const int bound = m + n - 1 - h.k;
          t.expect(ce <= el && el <= bound, [&] { return "edge walk " + str(el) + " vs CD_e=" + str(ce) + " for " + ctx(); });
          t.expect(*cfm <= el, [&] { return "edge walk " + str(el) + " below CD_fm=" + str(*cfm) + " for " + ctx(); });
        }
      });
    }
  });
  long pairs = 0;
  for (long c : pair_counts) pairs += c;
  return finish(10, "distance hierarchy", t,
                str(static_cast<int>(jobs.size())) + " instances, " + std::to_string(pairs) + " pairs");
}

int rank_of(const std::vector<Circuit>& cs) {
  std::vector<std::vector<Rational>> rows;
  for (const Circuit& c : cs) rows.emplace_back(c.signs().begin(), c.signs().end());
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col].is_zero()) continue;
      const Rational f = rows[r][col] / rows[static_cast<std::size_t>(rank)][col];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[static_cast<std::size_t>(rank)][k];
    }
    ++rank;
  }
  return rank;
}

CriterionResult criterion_structural(const VerifyOptions& o) {
  Tally t;
  for (int m = 2; m <= 5; ++m) {
    for (int n = 2; n <= 5; ++n) {
      const auto cs = enumerate_circuits(m, n);
      t.expect(cs.size() == circuit_count(m, n), [&] { return "circuit count for " + str(m) + "x" + str(n); });
      std::set<std::vector<std::int8_t>> distinct;
      for (const Circuit& c : cs) distinct.insert(c.signs());
      t.expect(distinct.size() == cs.size(), [&] { return "repeated circuit for " + str(m) + "x" + str(n); });
    }
  }
  std::mt19937_64 rng(o.seed * 4 + 6);
  int vertices = 0;
  for (int m = 2; m <= 4; ++m) {
    for (int n = m; n <= 5; ++n) {
      for (int r = 0; r < 3; ++r) {
        const Instance inst = random_instance(m, n, rng);
        const VertexSet vs = enumerate_vertices(inst, o.max_trees);
        t.expect(vs.size() > 0, [&] { return "no vertices for " + margins(inst); });
        for (const Assignment& a : vs.vertices) {
          ++vertices;
          t.expect(a.support().size() == m + n - 1,
                   [&] { return "vertex " + a.flows().str() + " of " + margins(inst) + " is not a spanning tree"; });
        }
      }
    }
  }
  int figures = 0;
  for (int m = 2; m <= 5; ++m) {
    for (int n = m; n <= 5; ++n) {
      const std::string name = str(m) + "x" + str(n);
      try {
        const GeneratedCase c = gen_hirsch_sharp(m, n);
        const int k = std::min((m - 1) * (n - 1), m + n - 1);
        t.expect(static_cast<int>(c.circuits.size()) == k, [&] { return name + ": circuit count"; });
        t.expect(rank_of(c.circuits) == k, [&] { return name + ": circuits dependent"; });
        EdgeSet dec(m, n);
        EdgeSet inc(m, n);
        for (std::size_t a = 0; a < c.circuits.size(); ++a) {
          for (const Edge& e : c.circuits[a].decreased_edges()) dec.insert(e);
          for (const Edge& e : c.circuits[a].increased_edges()) inc.insert(e);
          for (std::size_t b = a + 1; b < c.circuits.size(); ++b) {
            bool ok = true;
            for (int i = 0; i < m; ++i) {
              for (int j = 0; j < n; ++j) ok = ok && c.circuits[a].sign(i, j) * c.circuits[b].sign(i, j) >= 0;
            }
            t.expect(ok, [&] { return name + ": circuits not sign-compatible"; });
          }
        }
        t.expect(is_forest(dec) && is_forest(inc), [&] { return name + ": solid or dashed union has a cycle"; });
        ++figures;
      } catch (const InternalError& e) {
        t.expect(false, [&] { return name + ": " + e.what(); });
      }
    }
  }
  return finish(11, "structural invariants", t,
                "circuit counts m,n<=5, " + str(vertices) + " vertices, " + str(figures) + " lower-bound families");
}

}  // namespace

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << "[" << (id < 10 ? " " : "") << id << "] " << (passed ? "PASS" : "FAIL") << "  " << title << ": " << detail;
  return os.str();
}

std::vector<std::pair<int, int>> vertex_pairs(int vertices, int count, std::uint64_t seed) {
  std::vector<std::pair<int, int>> out;
  const long total = static_cast<long>(vertices) * (vertices - 1);
  if (count < 0 || total <= count) {
    for (int a = 0; a < vertices; ++a) {
      for (int b = 0; b < vertices; ++b) {
        if (a != b) out.push_back({a, b});
      }
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  std::set<std::pair<int, int>> chosen;
  while (static_cast<int>(chosen.size()) < count) {
    const int a = pick(rng);
    const int b = pick(rng);
    if (a != b) chosen.insert({a, b});
  }
  return {chosen.begin(), chosen.end()};
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  switch (id) {
    case 1: return criterion_example1(opts);
    case 2: return criterion_coincide(opts);
    case 3: return criterion_diameter_n(opts);
    case 4: return criterion_cdfm_2xn(opts);
    case 5: return criterion_edge_2xn(opts);
    case 6: return criterion_monotone(opts);
    case 7: return criterion_edge_3xn(opts);
    case 8: return criterion_decomposition(opts);
    case 9: return criterion_lower_bound(opts);
    case 10: return criterion_hierarchy(opts);
    case 11: return criterion_structural(opts);
    default: throw InvalidArgument("no criterion " + std::to_string(id));
  }
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "hierarchy") return {1, 2, 4, 8, 10};
  if (suite == "marking") return {5, 7};
  if (suite == "monotone") return {6};
  if (suite == "hirsch") return {3, 11};
  if (suite == "lowerbound") return {9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw InvalidArgument("unknown suite \"" + suite + "\" (hierarchy, marking, monotone, hirsch, lowerbound, all)");
}

std::vector<CaseCheck> check_case(const GeneratedCase& c, const std::string& suite, const VerifyOptions& opts) {
  suite_criteria(suite);  // validates the name
  const Instance& inst = c.instance;
  const int m = inst.m();
  const int n = inst.n();
  std::vector<CaseCheck> out;
  const auto circuits = enumerate_circuits(m, n);
  std::optional<VertexGraph> graph;
  const auto g = [&]() -> const VertexGraph& {
    if (!graph) graph = build_vertex_graph(inst, opts.max_trees);
    return *graph;
  };

  if (suite == "hierarchy") {
    const int ce = graph_distance(g(), c.from, c.to);
    const auto cfm = cdfm_distance(c.from, c.to, circuits, limits(opts));
    const int cd = min_cd(c.from, c.to, circuits, opts.max_solves);
    const bool ok = cfm && ce >= *cfm && *cfm >= cd;
    out.push_back({"CD_e=" + str(ce) + " >= CD_fm=" + (cfm ? str(*cfm) : std::string("?")) + " >= CD=" + str(cd) +
                       (ok ? ", pass" : ", fail"),
                   ok});
  }
  for (const auto& [claim, want] : c.expected) {
    std::optional<int> got;
    if (claim == "edge_distance") {
      got = edge_distance(Assignment(inst, c.from), Assignment(inst, c.to));
    } else if (claim == "graph_distance") {
      got = graph_distance(g(), c.from, c.to);
    } else if (claim == "graph_diameter") {
      got = graph_diameter(g(), opts.workers);
    } else if (claim == "cdfm_distance") {
      got = cdfm_distance(c.from, c.to, circuits, limits(opts));
    } else if (claim == "cd_distance") {
      // The lower-bound claim refers to the perturbed margins.
      if (!c.circuits.empty() && c.eps.is_zero() && c.name.starts_with("hirsch")) {
        const GeneratedCase p = perturb_certified(c, Rational(1, 1024), 16, opts.max_solves);
        got = min_cd(p.from, p.to, circuits, opts.max_solves);
      } else {
        got = min_cd(c.from, c.to, circuits, opts.max_solves);
      }
    } else if (claim == "critical_edges") {
      got = critical_edges(g().vertices, m, n).size();
    } else if (claim == "circuits") {
      got = static_cast<int>(c.circuits.size());
    }
    const bool ok = got && *got == want;
    out.push_back({claim + " expected " + str(want) + ", got " + (got ? str(*got) : std::string("?")) +
                       (ok ? ", pass" : ", fail"),
                   ok});
  }
  return out;
}

}  // namespace tpd
