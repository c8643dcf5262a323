#include <doctest.h>

#include <random>

#include "tpd/construct.hpp"
#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/oracle.hpp"
#include "tpd/walks.hpp"

using namespace tpd;

TEST_CASE("2xn maximal-step walk of the example") {
  const GeneratedCase c = gen_example1();
  const Walk w = cdfm_walk_2xn(c.instance, c.from, c.to);
  CHECK(w.length() == 1);
  CHECK(w.kind() == WalkKind::kCDfm);
  CHECK(w.steps().front().alpha == Rational(2));
  CHECK(validate_walk(w, c.instance).valid);
}

TEST_CASE("2xn edge walk of the example") {
  const GeneratedCase c = gen_example1();
  const ConstructedWalk w = edge_walk_2xn(c.instance, c.from, c.to);
  CHECK(w.walk.length() == 3);
  CHECK(validate_walk(w.walk, c.instance).valid);
  std::vector<Edge> inserted;
  for (const Transition& t : w.trace) {
    if (t.pivot) inserted.push_back(t.pivot->inserted);
  }
  CHECK(inserted == std::vector<Edge>{{0, 2}, {1, 0}, {0, 1}});
  CHECK(w.mark_only() == 1);
}

TEST_CASE("2xn edge walk on the coinciding family") {
  for (int n = 2; n <= 5; ++n) {
    const GeneratedCase c = gen_coincide(n);
    const ConstructedWalk w = edge_walk_2xn(c.instance, c.from, c.to);
    CHECK(w.walk.length() == n - 1);
    CHECK(validate_walk(w.walk, c.instance).valid);
    CHECK(w.walk.back() == c.to);
    // one mark per transition, every target edge marked at the end
    CHECK(w.trace.size() == static_cast<std::size_t>(w.walk.length() + w.mark_only()));
  }
}

TEST_CASE("marking rules") {
  const GeneratedCase c = gen_coincide(3);
  const EdgeSet fs = support_graph(c.to);
  const MarkState start{c.from, EdgeSet(2, 3)};
  // (1,1) is in both supports, but d1 is mixed in F and s1 has unmarked leaves there.
  CHECK_FALSE(can_mark(fs, start, {0, 0}));
  // s2 has no leaf edges in F, so its mixed edge may be marked right away.
  CHECK(can_mark(fs, start, {1, 0}));
  CHECK_FALSE(can_mark(fs, start, {0, 1}));
  CHECK(marking_hypothesis(start, 0));
  const Transition t = mark_pivot(c.instance, c.to, start, 0);
  CHECK(fs.contains(t.marked));
  CHECK(t.next.marked.contains(t.marked));
}

TEST_CASE("3xn edge walks on random margins") {
  std::mt19937_64 rng(11);
  for (int r = 0; r < 4; ++r) {
    const Instance inst = random_instance(3, 3, rng);
    const VertexGraph g = build_vertex_graph(inst);
    const HirschData h = hirsch_data(g.vertices, 3, 3);
    const DistanceTable d = all_pairs_distances(g);
    for (int a = 0; a < g.size(); a += 3) {
      for (int b = 0; b < g.size(); b += 2) {
        const Matrix& x = g.vertices.vertices[static_cast<std::size_t>(a)].flows();
        const Matrix& y = g.vertices.vertices[static_cast<std::size_t>(b)].flows();
        const ConstructedWalk w = edge_walk_3xn(inst, x, y);
        CHECK(validate_walk(w.walk, inst).valid);
        CHECK(w.walk.back() == y);
        CHECK(w.walk.length() <= 5 - h.k);
        CHECK(w.walk.length() >= d.dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      }
    }
  }
}

TEST_CASE("greedy optimum of a 2xn polytope") {
  const Instance inst({Rational(5), Rational(5)}, {Rational(6), Rational(2), Rational(2)});
  const Matrix s = parse_matrix("0,3,-1;0,0,0");
  const Matrix y = lp_optimum_2xn(inst, s);
  CHECK(y == parse_matrix("3,2,0;3,0,2"));
  CHECK(objective(s, y) == Rational(6));
  const ConstructedWalk w = monotone_walk_2xn(inst, northwest_corner(inst).flows(), s);
  CHECK(is_monotone(w.walk, s));
  CHECK(objective(s, w.walk.back()) == Rational(6));
}

TEST_CASE("constructions reject bad input") {
  const GeneratedCase c = gen_coincide(3);
  CHECK_THROWS_AS(cdfm_walk_2xn(c.instance, parse_matrix("5,0,0;1,1,3"), c.to), InvalidArgument);
  CHECK_THROWS_AS(edge_walk_3xn(c.instance, c.from, c.to), InvalidArgument);
  const GeneratedCase h = gen_hirsch_sharp(2, 3);
  CHECK_THROWS_AS(edge_walk_2xn(h.instance, h.from, h.to), InvalidArgument);
}
