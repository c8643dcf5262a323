#include "tpd/polytope.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tpd/errors.hpp"

namespace tpd {

int VertexSet::find(const Matrix& flows) const {
  const auto it = index.find(flows);
  return it == index.end() ? -1 : it->second;
}

bool is_nondegenerate(const Instance& inst) {
  const int m = inst.m();
  const int n = inst.n();
  if (m > 20 || n > 20) throw InvalidArgument("degeneracy test limited to m, n <= 20");
  // Proper-subset sums of v, sorted, then look up each proper-subset sum of u.
  std::vector<Rational> vsums;
  for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
    Rational s;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1U) s += inst.v()[static_cast<std::size_t>(j)];
    }
    vsums.push_back(s);
  }
  std::sort(vsums.begin(), vsums.end());
  for (std::uint32_t mask = 1; mask + 1 < (1U << m); ++mask) {
    Rational s;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1U) s += inst.u()[static_cast<std::size_t>(i)];
    }
    if (std::binary_search(vsums.begin(), vsums.end(), s)) return false;
  }
  return true;
}

Assignment northwest_corner(const Instance& inst) {
  std::vector<Rational> u = inst.u();
  std::vector<Rational> v = inst.v();
  Matrix y(inst.m(), inst.n());
  int i = 0;
  int j = 0;
  while (i < inst.m() && j < inst.n()) {
    auto& ui = u[static_cast<std::size_t>(i)];
    auto& vj = v[static_cast<std::size_t>(j)];
    const Rational f = std::min(ui, vj);
    y(i, j) = f;
    ui -= f;
    vj -= f;
    if (ui.is_zero()) {
      ++i;
    } else {
      ++j;
    }
  }
  return Assignment(inst, std::move(y));
}

std::optional<Matrix> solve_on_support(const Instance& inst, const EdgeSet& forest) {
  const int m = inst.m();
  const int n = inst.n();
  if (forest.supplies() != m || forest.demands() != n) {
    throw InvalidArgument("support shape does not match the instance");
  }
  if (!is_forest(forest)) return std::nullopt;
  // Node residuals: supplies 0..m-1, demands m..m+n-1.
  std::vector<Rational> residual(inst.u());
  residual.insert(residual.end(), inst.v().begin(), inst.v().end());
  std::vector<int> degree(static_cast<std::size_t>(m + n), 0);
  for (const Edge& e : forest.edges()) {
    ++degree[static_cast<std::size_t>(e.supply)];
    ++degree[static_cast<std::size_t>(m + e.demand)];
  }
  Matrix y(m, n);
  EdgeSet left = forest;
  bool progress = true;
  while (!left.empty() && progress) {
    progress = false;
    for (const Edge& e : left.edges()) {
      const auto s = static_cast<std::size_t>(e.supply);
      const auto d = static_cast<std::size_t>(m + e.demand);
      std::size_t leaf = 0;
      std::size_t other = 0;
      if (degree[s] == 1) {
        leaf = s;
        other = d;
      } else if (degree[d] == 1) {
        leaf = d;
        other = s;
      } else {
        continue;
      }
      const Rational f = residual[leaf];
      y.at(e) = f;
      residual[leaf] = 0;
      residual[other] -= f;
      --degree[s];
      --degree[d];
      left.erase(e);
      progress = true;
    }
  }
  if (!left.empty()) throw InternalError("leaf peeling stalled on a forest");
  if (!std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r.is_zero(); })) {
    return std::nullopt;
  }
  return y;
}

std::uint64_t spanning_tree_count(int m, int n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  const auto mul = [&](std::uint64_t f) { c = (f != 0 && c > kMax / f) ? kMax : c * f; };
  for (int t = 0; t < n - 1; ++t) mul(static_cast<std::uint64_t>(m));
  for (int t = 0; t < m - 1; ++t) mul(static_cast<std::uint64_t>(n));
  return c;
}

namespace {

// Generates spanning trees of K_{m,n} by including or skipping each edge in
// row-major order; a component labelling rejects cycles.
class TreeGenerator {
 public:
  TreeGenerator(int m, int n) : m_(m), n_(n), tree_(m, n), label_(static_cast<std::size_t>(m + n)) {
    std::iota(label_.begin(), label_.end(), 0);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    recurse(0, 0, visit);
  }

 private:
  template <typename Visit>
  void recurse(int idx, int chosen, Visit& visit) {
    const int need = m_ + n_ - 1;
    if (chosen == need) {
      visit(tree_);
      return;
    }
    if (m_ * n_ - idx < need - chosen) return;
    const Edge e{idx / n_, idx % n_};
    const int a = label_[static_cast<std::size_t>(e.supply)];
    const int b = label_[static_cast<std::size_t>(m_ + e.demand)];
    if (a != b) {
      const std::vector<int> saved = label_;
      for (int& l : label_) {
        if (l == b) l = a;
      }
      tree_.insert(e);
      recurse(idx + 1, chosen + 1, visit);
      tree_.erase(e);
      label_ = saved;
    }
    recurse(idx + 1, chosen, visit);
  }

  int m_;
  int n_;
  EdgeSet tree_;
  std::vector<int> label_;
};

}  // namespace

VertexSet enumerate_vertices(const Instance& inst, std::uint64_t max_trees) {
  const std::uint64_t trees = spanning_tree_count(inst.m(), inst.n());
  if (trees > max_trees) {
    throw ResourceLimitError("vertex enumeration needs " + std::to_string(trees) +
                             " spanning trees, above the cap of " + std::to_string(max_trees));
  }
  VertexSet vs;
  TreeGenerator gen(inst.m(), inst.n());
  gen.run([&](const EdgeSet& tree) {
    auto y = solve_on_support(inst, tree);
    if (!y || !y->is_nonnegative()) return;
    if (vs.index.contains(*y)) return;
    vs.index.emplace(*y, vs.size());
    vs.vertices.emplace_back(inst, std::move(*y));
  });
  return vs;
}

bool are_adjacent(const Assignment& a, const Assignment& b) {
  const EdgeSet sa = a.support();
  const EdgeSet sb = b.support();
  if (!is_forest(sa) || !is_forest(sb)) {
    throw InvalidArgument("adjacency is defined for vertices only");
  }
  return cyclomatic_number(sa | sb) == 1;
}

EdgeSet critical_edges(const VertexSet& vs, int m, int n) {
  EdgeSet common(m, n);
  if (vs.vertices.empty()) return common;
  common = vs.vertices.front().support();
  for (const Assignment& v : vs.vertices) common = common & v.support();
  return common;
}

HirschData hirsch_data(const VertexSet& vs, int m, int n) {
  HirschData h{0, 0, critical_edges(vs, m, n)};
  h.k = h.critical.size();
  h.bound = m + n - 1 - h.k;
  return h;
}

HirschData hirsch_data(const Instance& inst, std::uint64_t max_trees) {
  return hirsch_data(enumerate_vertices(inst, max_trees), inst.m(), inst.n());
}

bool is_mixed_demand(const EdgeSet& support, int j) { return support.demand_degree(j) >= 2; }

bool is_leaf_demand(const EdgeSet& support, int j) { return support.demand_degree(j) == 1; }

std::vector<int> mixed_demands(const EdgeSet& support) {
  std::vector<int> out;
  for (int j = 0; j < support.demands(); ++j) {
    if (is_mixed_demand(support, j)) out.push_back(j);
  }
  return out;
}

EdgeSet mixed_edges(const EdgeSet& support) {
  EdgeSet out(support.supplies(), support.demands());
  for (const Edge& e : support.edges()) {
    if (is_mixed_demand(support, e.demand)) out.insert(e);
  }
  return out;
}

}  // namespace tpd
