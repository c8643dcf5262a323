#include "tpd/circuits.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "tpd/errors.hpp"

namespace tpd {

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - k + p) --p;
    if (p < 0) return;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}

}  // namespace

std::uint64_t circuit_count(int m, int n) {
  if (m > 20 || n > 20) throw InvalidArgument("circuit count limited to m, n <= 20");
  std::uint64_t total = 0;
  for (int k = 2; k <= std::min(m, n); ++k) {
    total += binomial(m, k) * binomial(n, k) * factorial(k) * factorial(k - 1) / 2;
  }
  return total;
}

std::vector<Circuit> enumerate_circuits(int m, int n, std::uint64_t max_circuits) {
  if (m < 2 || n < 2) throw InvalidArgument("circuits need m, n >= 2");
  if (m * n > EdgeSet::kMaxEdges) throw InvalidArgument("circuit enumeration needs m*n <= 64");
  const std::uint64_t expected = circuit_count(m, n);
  if (expected > max_circuits) {
    throw ResourceLimitError("K_{" + std::to_string(m) + "," + std::to_string(n) + "} has " +
                             std::to_string(expected) + " circuits, above the cap of " +
                             std::to_string(max_circuits));
  }
  std::vector<Circuit> out;
  out.reserve(static_cast<std::size_t>(expected));
  for (int k = 2; k <= std::min(m, n); ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& ss) {
      for_each_subset(n, k, [&](const std::vector<int>& ds) {
        // The smallest supply stays first; the rest and all demands are permuted.
        std::vector<int> rest(ss.begin() + 1, ss.end());
        do {
          std::vector<int> dem = ds;
          do {
            std::vector<int> sup{ss.front()};
            sup.insert(sup.end(), rest.begin(), rest.end());
            Circuit c(m, n, std::move(sup), dem);
            if (c == c.canonical()) out.push_back(std::move(c));
          } while (std::next_permutation(dem.begin(), dem.end()));
        } while (std::next_permutation(rest.begin(), rest.end()));
      });
    });
  }
  std::sort(out.begin(), out.end());
  if (out.size() != expected) throw InternalError("circuit enumeration missed the closed-form count");
  return out;
}

std::optional<Rational> max_step(const Matrix& y, const Circuit& g) {
  std::optional<Rational> best;
  for (const Edge& e : g.decreased_edges()) {
    const Rational& f = y.at(e);
    if (f.sign() <= 0) return std::nullopt;
    if (!best || f < *best) best = f;
  }
  return best;
}

Matrix apply_step(const Matrix& y, const Circuit& g, const Rational& alpha) {
  Matrix out = y;
  for (const Edge& e : g.increased_edges()) out.at(e) += alpha;
  for (const Edge& e : g.decreased_edges()) out.at(e) -= alpha;
  return out;
}

PivotResult pivot(const Matrix& vertex, const Edge& edge) {
  const int m = vertex.rows();
  const int n = vertex.cols();
  const EdgeSet support = support_graph(vertex);
  if (support.contains(edge)) throw InvalidArgument("pivot edge " + edge.str() + " is already in the support");
  if (!is_forest(support)) throw InvalidArgument("pivots start from a vertex");
  // BFS over the support from d_j; nodes 0..m-1 are supplies, m.. demands.
  std::vector<int> parent(static_cast<std::size_t>(m + n), -2);
  std::deque<int> queue{m + edge.demand};
  parent[static_cast<std::size_t>(m + edge.demand)] = -1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    if (x == edge.supply) break;
    const auto visit = [&](int y) {
      if (parent[static_cast<std::size_t>(y)] == -2) {
        parent[static_cast<std::size_t>(y)] = x;
        queue.push_back(y);
      }
    };
    if (x < m) {
      for (const Edge& e : support.supply_edges(x)) visit(m + e.demand);
    } else {
      for (const Edge& e : support.demand_edges(x - m)) visit(e.supply);
    }
  }
  if (parent[static_cast<std::size_t>(edge.supply)] == -2) {
    throw InvalidArgument("pivot edge " + edge.str() + " joins two components; no cycle is closed");
  }
  // Path d_j = p0, p1 = s_a, p2 = d_b, ..., p_last = s_i.
  std::vector<int> path;
  for (int x = edge.supply; x != -1; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  std::vector<int> supplies{edge.supply};
  std::vector<int> demands{edge.demand};
  for (std::size_t p = 1; p + 1 < path.size(); p += 2) {
    supplies.push_back(path[p]);
    demands.push_back(path[p + 1] - m);
  }
  Circuit g(m, n, std::move(supplies), std::move(demands));
  const auto alpha = max_step(vertex, g);
  if (!alpha) throw InternalError("pivot cycle has a decreased edge without flow");
  PivotResult r{edge, g, *alpha, apply_step(vertex, g, *alpha), {}};
  for (const Edge& e : g.decreased_edges()) {
    if (r.result.at(e).is_zero()) r.deleted.push_back(e);
  }
  return r;
}

Decomposition sign_compatible_decomposition(const Matrix& from, const Matrix& to) {
  if (!from.same_shape(to)) throw InvalidArgument("decomposition endpoints differ in shape");
  const int m = from.rows();
  const int n = from.cols();
  const Matrix target = to - from;
  for (int i = 0; i < m; ++i) {
    if (!target.row_sum(i).is_zero()) throw InvalidArgument("endpoints have different supply margins");
  }
  for (int j = 0; j < n; ++j) {
    if (!target.col_sum(j).is_zero()) throw InvalidArgument("endpoints have different demand margins");
  }
  Matrix d = target;
  Decomposition out;
  while (!d.is_zero()) {
    int start = -1;
    for (int i = 0; i < m && start < 0; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!d(i, j).is_zero()) {
          start = i;
          break;
        }
      }
    }
    // Arcs s_i -> d_j where d > 0 and d_j -> s_i where d < 0; follow the
    // lowest-index arc until a node repeats.
    std::vector<int> trail;
    std::vector<int> pos(static_cast<std::size_t>(m + n), -1);
    int x = start;
    while (pos[static_cast<std::size_t>(x)] < 0) {
      pos[static_cast<std::size_t>(x)] = static_cast<int>(trail.size());
      trail.push_back(x);
      int next = -1;
      if (x < m) {
        for (int j = 0; j < n && next < 0; ++j) {
          if (d(x, j).sign() > 0) next = m + j;
        }
      } else {
        for (int i = 0; i < m && next < 0; ++i) {
          if (d(i, x - m).sign() < 0) next = i;
        }
      }
      if (next < 0) throw InternalError("residual lost flow conservation during decomposition");
      x = next;
    }
    std::vector<int> cycle(trail.begin() + pos[static_cast<std::size_t>(x)], trail.end());
    if (cycle.front() >= m) std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    std::vector<int> supplies;
    std::vector<int> demands;
    for (std::size_t p = 0; p < cycle.size(); p += 2) {
      supplies.push_back(cycle[p]);
      demands.push_back(cycle[p + 1] - m);
    }
    Circuit g(m, n, std::move(supplies), std::move(demands));
    std::optional<Rational> coef;
    for (const Edge& e : g.support().edges()) {
      const Rational a = d.at(e).abs();
      if (!coef || a < *coef) coef = a;
    }
    const Matrix next = apply_step(d, g, -*coef);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (next(i, j).sign() * target(i, j).sign() < 0 || (target(i, j).is_zero() && !next(i, j).is_zero())) {
          throw InternalError("decomposition residual left the orthant of the target");
        }
      }
    }
    d = next;
    out.push_back({std::move(g), *coef});
  }
  return out;
}

Walk decomposition_walk(const Matrix& from, const Decomposition& terms) {
  Walk w(WalkKind::kCDs, from);
  for (const DecompositionTerm& t : terms) w.append(t.circuit, t.coefficient);
  return w;
}

}  // namespace tpd
