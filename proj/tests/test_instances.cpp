#include <doctest.h>

#include "tpd/circuits.hpp"
#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/oracle.hpp"
#include "tpd/polytope.hpp"

using namespace tpd;

TEST_CASE("example case") {
  const GeneratedCase c = gen_example1();
  CHECK(c.instance.u() == std::vector<Rational>{3, 3});
  CHECK(c.instance.v() == std::vector<Rational>{2, 2, 2});
  CHECK(edge_distance(Assignment(c.instance, c.from), Assignment(c.instance, c.to)) == 2);
  CHECK(c.expected.at("graph_distance") == 3);
}

TEST_CASE("coinciding family margins") {
  const GeneratedCase c = gen_coincide(3);
  CHECK(c.instance.u() == std::vector<Rational>{5, 5});
  CHECK(c.instance.v() == std::vector<Rational>{6, 2, 2});
  const GeneratedCase two = gen_coincide(2);
  CHECK(two.instance.u() == std::vector<Rational>{3, 3});
  CHECK(two.instance.v() == std::vector<Rational>{4, 2});
  const VertexGraph g = build_vertex_graph(two.instance);
  CHECK(graph_distance(g, two.from, two.to) == 1);
}

TEST_CASE("diameter-n family") {
  const GeneratedCase c3 = gen_diameter_n(3);
  CHECK(c3.instance == gen_example1().instance);
  CHECK(graph_distance(build_vertex_graph(c3.instance), c3.from, c3.to) == 3);
  const GeneratedCase c4 = gen_diameter_n(4);
  CHECK(c4.instance.v() == std::vector<Rational>{4, 2, 2, 2});
  CHECK(graph_distance(build_vertex_graph(c4.instance), c4.from, c4.to) == 4);
  CHECK_THROWS_AS(gen_diameter_n(2), InvalidArgument);
}

TEST_CASE("lower-bound construction for 2x3") {
  const GeneratedCase c = gen_hirsch_sharp(2, 3);
  CHECK(c.circuits.size() == 2);
  CHECK(c.instance.u() == std::vector<Rational>{2, 2});
  CHECK(c.instance.v() == std::vector<Rational>{2, 1, 1});
  CHECK(c.from == parse_matrix("2,0,0;0,1,1"));
  CHECK(c.to == parse_matrix("0,1,1;2,0,0"));
}

TEST_CASE("lower-bound construction sizes") {
  CHECK(hirsch_sharp_circuits(3, 3).size() == 4);
  CHECK(hirsch_sharp_circuits(3, 4).size() == 6);
  for (int m = 2; m <= 5; ++m) {
    for (int n = m; n <= 5; ++n) {
      CHECK_NOTHROW(gen_hirsch_sharp(m, n));
    }
  }
}

TEST_CASE("perturbation along the first circuit") {
  const GeneratedCase base = gen_example1();
  const Rational e(1, 8);
  const GeneratedCase p = perturb(base, e);
  CHECK(p.instance.u() == std::vector<Rational>{3 + e, 3 + e});
  CHECK(p.instance.v() == std::vector<Rational>{2 + e, 2 + e, 2});
  CHECK(p.from == Matrix::from_rows({{2 + e, 1, 0}, {0, 1 + e, 2}}));
  CHECK(p.to == Matrix::from_rows({{0, 1 + e, 2}, {2 + e, 1, 0}}));
  CHECK(perturb(base, Rational(0)).instance == base.instance);
  CHECK_THROWS_AS(perturb(base, Rational(-1)), InvalidArgument);
}

TEST_CASE("certified perturbation of the 2x3 construction") {
  const GeneratedCase p = perturb_certified(gen_hirsch_sharp(2, 3));
  const auto circuits = enumerate_circuits(2, 3);
  CHECK_FALSE(cd_at_most(p.from, p.to, 1, circuits));
  CHECK(cd_at_most(p.from, p.to, 2, circuits));
}

TEST_CASE("generator names") {
  CHECK(generate("coincide:4").instance.n() == 4);
  CHECK(generate("hirsch:3,4").circuits.size() == 6);
  CHECK_THROWS_AS(generate("coincide"), InvalidArgument);
  CHECK_THROWS_AS(generate("nosuch"), InvalidArgument);
}

TEST_CASE("random margins are non-degenerate and seeded") {
  std::mt19937_64 a(3);
  std::mt19937_64 b(3);
  const Instance x = random_instance(2, 4, a);
  CHECK(x == random_instance(2, 4, b));
  CHECK(is_nondegenerate(x));
}
