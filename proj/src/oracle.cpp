#include "tpd/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "tpd/circuits.hpp"
#include "tpd/errors.hpp"
#include "tpd/parallel.hpp"

namespace tpd {

VertexGraph build_vertex_graph(const Instance& inst, std::uint64_t max_trees) {
  VertexGraph g{enumerate_vertices(inst, max_trees), {}};
  const int v = g.size();
  std::vector<EdgeSet> supports;
  supports.reserve(static_cast<std::size_t>(v));
  for (const Assignment& a : g.vertices.vertices) supports.push_back(a.support());
  g.adjacency.assign(static_cast<std::size_t>(v), {});
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (cyclomatic_number(supports[static_cast<std::size_t>(a)] | supports[static_cast<std::size_t>(b)]) == 1) {
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  return g;
}

std::vector<int> bfs_distances(const VertexGraph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int y : g.adjacency[static_cast<std::size_t>(x)]) {
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

int graph_distance(const VertexGraph& g, const Matrix& from, const Matrix& to) {
  const int a = g.vertices.find(from);
  const int b = g.vertices.find(to);
  if (a < 0 || b < 0) throw InvalidArgument("graph distance endpoints must be vertices");
  return bfs_distances(g, a)[static_cast<std::size_t>(b)];
}

int DistanceTable::diameter() const {
  int d = 0;
  for (const auto& row : dist) {
    for (int x : row) d = std::max(d, x);
  }
  return d;
}

DistanceTable all_pairs_distances(const VertexGraph& g, int workers) {
  DistanceTable t;
  t.dist.resize(static_cast<std::size_t>(g.size()));
  parallel_for(t.dist.size(), workers, [&](std::size_t i) { t.dist[i] = bfs_distances(g, static_cast<int>(i)); });
  return t;
}

int graph_diameter(const VertexGraph& g, int workers) { return all_pairs_distances(g, workers).diameter(); }

// ---------------------------------------------------------------------------
// Maximal-step BFS

std::vector<std::optional<int>> cdfm_distances(const Matrix& from, const std::vector<Matrix>& targets,
                                               const std::vector<Circuit>& circuits, SearchLimits limits) {
  const int cap = limits.depth_cap < 0 ? from.rows() + from.cols() : limits.depth_cap;
  std::vector<Circuit> oriented;
  oriented.reserve(2 * circuits.size());
  for (const Circuit& c : circuits) {
    oriented.push_back(c);
    oriented.push_back(c.negated());
  }
  std::unordered_map<Matrix, std::vector<std::size_t>> wanted;
  for (std::size_t t = 0; t < targets.size(); ++t) wanted[targets[t]].push_back(t);
  std::vector<std::optional<int>> out(targets.size());
  std::size_t remaining = wanted.size();
  const auto hit = [&](const Matrix& y, int depth) {
    const auto it = wanted.find(y);
    if (it == wanted.end()) return;
    for (std::size_t t : it->second) out[t] = depth;
    wanted.erase(it);
    --remaining;
  };

  std::unordered_map<Matrix, int> seen{{from, 0}};
  std::vector<Matrix> frontier{from};
  hit(from, 0);
  for (int depth = 1; depth <= cap && remaining > 0 && !frontier.empty(); ++depth) {
    std::vector<Matrix> next;
    for (const Matrix& y : frontier) {
      for (const Circuit& g : oriented) {
        const auto alpha = max_step(y, g);
        if (!alpha) continue;
        Matrix z = apply_step(y, g, *alpha);
        if (seen.contains(z)) continue;
        if (seen.size() >= limits.max_states) {
          throw ResourceLimitError("maximal-step search stored " + std::to_string(seen.size()) +
                                   " states, the cap");
        }
        hit(z, depth);
        seen.emplace(z, depth);
        next.push_back(std::move(z));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<int> cdfm_distance(const Matrix& from, const Matrix& to, const std::vector<Circuit>& circuits,
                                 SearchLimits limits) {
  return cdfm_distances(from, {to}, circuits, limits).front();
}

// ---------------------------------------------------------------------------
// Unrestricted circuit distance

namespace {

struct BasisVector {
  std::vector<Rational> entries;  // pivot entry normalized to 1
  std::size_t pivot;
};

// Reduces v against the basis so it vanishes on every pivot coordinate.
void reduce(std::vector<Rational>& v, const std::vector<BasisVector>& basis) {
  for (const BasisVector& b : basis) {
    if (v[b.pivot].is_zero()) continue;
    const Rational f = v[b.pivot];
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!b.entries[k].is_zero()) v[k] -= f * b.entries[k];
    }
  }
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

class SpanSearch {
 public:
  SpanSearch(const std::vector<Circuit>& circuits, std::uint64_t max_solves) : max_solves_(max_solves) {
    for (const Circuit& c : circuits) {
      std::vector<Rational> v;
      v.reserve(c.signs().size());
      for (std::int8_t s : c.signs()) v.emplace_back(static_cast<int>(s));
      vectors_.push_back(std::move(v));
    }
  }

  // Some independent set of at most k circuits spans the residual.
  bool run(std::vector<Rational> residual, int k) {
    std::vector<BasisVector> basis;
    return dfs(0, k, basis, residual);
  }

 private:
  bool dfs(std::size_t start, int left, std::vector<BasisVector>& basis, const std::vector<Rational>& residual) {
    if (all_zero(residual)) return true;
    if (left == 0) return false;
    for (std::size_t c = start; c < vectors_.size(); ++c) {
      if (++solves_ > max_solves_) {
        throw ResourceLimitError("circuit subset search exceeded " + std::to_string(max_solves_) +
                                 " linear solves");
      }
      std::vector<Rational> v = vectors_[c];
      reduce(v, basis);
      const auto p = std::find_if(v.begin(), v.end(), [](const Rational& r) { return !r.is_zero(); });
      if (p == v.end()) continue;  // dependent on the chosen circuits
      const std::size_t pivot = static_cast<std::size_t>(p - v.begin());
      const Rational inv = Rational(1) / v[pivot];
      for (Rational& x : v) x *= inv;
      std::vector<Rational> r = residual;
      if (!r[pivot].is_zero()) {
        const Rational f = r[pivot];
        for (std::size_t k = 0; k < r.size(); ++k) {
          if (!v[k].is_zero()) r[k] -= f * v[k];
        }
      }
      basis.push_back({std::move(v), pivot});
      const bool found = dfs(c + 1, left - 1, basis, r);
      basis.pop_back();
      if (found) return true;
    }
    return false;
  }

  std::vector<std::vector<Rational>> vectors_;
  std::uint64_t max_solves_;
  std::uint64_t solves_ = 0;
};

}  // namespace

bool cd_at_most(const Matrix& from, const Matrix& to, int k, const std::vector<Circuit>& circuits,
                std::uint64_t max_solves) {
  if (!from.same_shape(to)) throw InvalidArgument("endpoints differ in shape");
  if (k < 0) throw InvalidArgument("negative step budget");
  const Matrix d = to - from;
  // Any nonzero real coefficient on a cycle is a positive one on one of its
  // two orientations, so membership in the span of <= k cycles decides it.
  SpanSearch search(circuits, max_solves);
  return search.run(std::vector<Rational>(d.data().begin(), d.data().end()), k);
}

int min_cd(const Matrix& from, const Matrix& to, const std::vector<Circuit>& circuits, std::uint64_t max_solves) {
  const int limit = from.rows() * from.cols();
  for (int k = 0; k <= limit; ++k) {
    if (cd_at_most(from, to, k, circuits, max_solves)) return k;
  }
  throw InvalidArgument("endpoint difference is not in the circuit span");
}

}  // namespace tpd
