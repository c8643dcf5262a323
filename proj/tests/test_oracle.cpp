#include <doctest.h>

#include "tpd/circuits.hpp"
#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/oracle.hpp"

using namespace tpd;

TEST_CASE("graph distances") {
  const GeneratedCase c = gen_example1();
  const VertexGraph g = build_vertex_graph(c.instance);
  CHECK(graph_distance(g, c.from, c.to) == 3);
  CHECK(graph_distance(g, c.from, c.from) == 0);
  CHECK(graph_diameter(g) == 3);
  const DistanceTable t = all_pairs_distances(g, 2);
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      CHECK(t.dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
            t.dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]);
    }
  }
  CHECK_THROWS_AS(graph_distance(g, parse_matrix("1,1,1;1,1,1"), c.to), InvalidArgument);
}

TEST_CASE("diameter of the coinciding family") {
  const VertexGraph g = build_vertex_graph(gen_coincide(3).instance);
  CHECK(graph_diameter(g) == 2);
}

TEST_CASE("maximal-step distances") {
  const GeneratedCase c = gen_example1();
  const auto circuits = enumerate_circuits(2, 3);
  CHECK(cdfm_distance(c.from, c.to, circuits) == 1);
  CHECK(cdfm_distance(c.from, c.from, circuits) == 0);
  const GeneratedCase k = gen_coincide(3);
  CHECK(cdfm_distance(k.from, k.to, circuits) == 2);
  CHECK_FALSE(cdfm_distance(k.from, k.to, circuits, {1, kDefaultMaxStates}));
  CHECK_THROWS_AS(cdfm_distance(k.from, k.to, circuits, {-1, 1}), ResourceLimitError);
}

TEST_CASE("unrestricted circuit distance") {
  const GeneratedCase c = gen_example1();
  const auto circuits = enumerate_circuits(2, 3);
  CHECK(cd_at_most(c.from, c.to, 1, circuits));
  CHECK(cd_at_most(c.from, c.from, 0, circuits));
  CHECK_FALSE(cd_at_most(c.from, c.to, 0, circuits));
  const Rational e(1, 1024);
  const Matrix o = Matrix::from_rows({{2 + e, 1, 0}, {0, 1 + e, 2}});
  const Matrix f = Matrix::from_rows({{0, 1 + e, 2}, {2 + e, 1, 0}});
  CHECK_FALSE(cd_at_most(o, f, 1, circuits));
  CHECK(cd_at_most(o, f, 2, circuits));
  CHECK(min_cd(o, f, circuits) == 2);
}

TEST_CASE("a full-dimensional difference needs a basis") {
  const auto circuits = enumerate_circuits(3, 3);
  const GeneratedCase c = gen_hirsch_sharp(3, 3);
  const GeneratedCase p = perturb(c, Rational(1, 1024));
  CHECK(min_cd(p.from, p.to, circuits) == 4);
  CHECK_THROWS_AS(cd_at_most(p.from, p.to, 3, circuits, 10), ResourceLimitError);
}
