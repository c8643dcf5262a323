#include <doctest.h>

#include <algorithm>
#include <random>

#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/polytope.hpp"

using namespace tpd;

namespace {

Instance margins(std::initializer_list<int> u, std::initializer_list<int> v) {
  return Instance(std::vector<Rational>(u.begin(), u.end()), std::vector<Rational>(v.begin(), v.end()));
}

// Vertices by brute force over all supports of size m+n-1: no trees involved.
int brute_vertex_count(const Instance& inst) {
  const int m = inst.m();
  const int n = inst.n();
  const int e = m * n;
  std::vector<int> sel(static_cast<std::size_t>(e), 0);
  std::fill(sel.begin(), sel.begin() + (m + n - 1), 1);
  std::sort(sel.begin(), sel.end());
  int count = 0;
  do {
    EdgeSet s(m, n);
    for (int k = 0; k < e; ++k) {
      if (sel[static_cast<std::size_t>(k)]) s.insert({k / n, k % n});
    }
    if (!is_forest(s)) continue;
    const auto y = solve_on_support(inst, s);
    if (y && y->is_nonnegative() && support_graph(*y) == s) ++count;
  } while (std::next_permutation(sel.begin(), sel.end()));
  return count;
}

}  // namespace

TEST_CASE("non-degeneracy") {
  CHECK(is_nondegenerate(margins({3, 3}, {2, 2, 2})));
  CHECK_FALSE(is_nondegenerate(margins({4, 4}, {2, 2, 4})));
  CHECK(is_nondegenerate(margins({5, 5}, {6, 2, 2})));
  CHECK(is_nondegenerate(margins({3, 3}, {4, 2})));
  CHECK_FALSE(is_nondegenerate(margins({2, 2}, {2, 1, 1})));
}

TEST_CASE("vertex counts") {
  CHECK(enumerate_vertices(margins({3, 3}, {2, 2, 2})).size() == 6);
  CHECK(enumerate_vertices(margins({5, 5}, {6, 2, 2})).size() == 4);
  CHECK(enumerate_vertices(margins({3, 3}, {4, 2})).size() == 2);
}

TEST_CASE("vertex enumeration agrees with brute force on random margins") {
  std::mt19937_64 rng(7);
  for (int r = 0; r < 6; ++r) {
    const Instance inst = random_instance(2 + r % 2, 3, rng);
    CHECK(enumerate_vertices(inst).size() == brute_vertex_count(inst));
  }
}

TEST_CASE("northwest corner is a vertex") {
  const Instance inst = margins({5, 5}, {6, 2, 2});
  const Assignment a = northwest_corner(inst);
  CHECK(a.flows() == parse_matrix("5,0,0;1,2,2"));
  CHECK(a.is_vertex());
}

TEST_CASE("adjacency by the unique-cycle test") {
  const Instance inst = margins({3, 3}, {2, 2, 2});
  const Assignment o(inst, parse_matrix("2,1,0;0,1,2"));
  const Assignment f(inst, parse_matrix("0,1,2;2,1,0"));
  const Assignment mid(inst, parse_matrix("2,0,1;0,2,1"));
  CHECK_FALSE(are_adjacent(o, f));
  CHECK(are_adjacent(o, mid));
}

TEST_CASE("critical edges of the coinciding family") {
  const Instance inst = margins({5, 5}, {6, 2, 2});
  const HirschData h = hirsch_data(inst);
  CHECK(h.critical == EdgeSet(2, 3, {{0, 0}, {1, 0}}));
  CHECK(h.k == 2);
  CHECK(h.bound == 2);
}

TEST_CASE("mixed and leaf demands") {
  const EdgeSet s(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK(mixed_demands(s) == std::vector<int>{1});
  CHECK(is_leaf_demand(s, 0));
  CHECK(mixed_edges(s) == EdgeSet(2, 3, {{0, 1}, {1, 1}}));
}

TEST_CASE("resource guard on spanning trees") {
  CHECK(spanning_tree_count(2, 3) == 12);
  CHECK(spanning_tree_count(3, 3) == 81);
  CHECK_THROWS_AS(enumerate_vertices(margins({5, 5}, {6, 2, 2}), 5), ResourceLimitError);
}
