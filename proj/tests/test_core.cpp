#include <doctest.h>

#include "tpd/core.hpp"
#include "tpd/errors.hpp"

using namespace tpd;

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-4").str() == "-4");
  CHECK(Rational::parse("5/1") == Rational(5));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2).pow(3) == Rational(1, 8));
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidArgument);
}

TEST_CASE("edge sets") {
  EdgeSet s(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK(s.size() == 4);
  CHECK(s.contains({1, 1}));
  CHECK_FALSE(s.contains({1, 0}));
  CHECK(s.demand_degree(1) == 2);
  CHECK(s.supply_degree(0) == 2);
  CHECK(s.str() == "{(1,1),(1,2),(2,2),(2,3)}");
  CHECK(is_forest(s));
  s.insert({1, 0});
  CHECK(cyclomatic_number(s) == 1);
  CHECK_FALSE(is_forest(s));
}

TEST_CASE("circuits are rotated to their smallest supply") {
  const Circuit a(2, 3, {1, 0}, {0, 1});
  const Circuit b(2, 3, {0, 1}, {1, 0});
  CHECK(a == b);
  CHECK(a.sign(0, 1) == 1);
  CHECK(a.sign(1, 0) == 1);
  CHECK(a.sign(0, 0) == -1);
  CHECK(a.sign(1, 1) == -1);
  CHECK(a.str() == "(s1,d2,s2,d1)");
  CHECK(a.negated().negated() == a);
  CHECK(a.canonical() == a.negated().canonical());
}

TEST_CASE("circuits round-trip through their sign vectors") {
  const Circuit c(3, 3, {0, 2, 1}, {1, 2, 0});
  std::vector<int> signs(c.signs().begin(), c.signs().end());
  CHECK(Circuit::from_signs(3, 3, signs) == c);
  CHECK(c.increased_edges().size() == 3);
  CHECK(c.decreased_edges().size() == 3);
  CHECK(cyclomatic_number(c.support()) == 1);
}

TEST_CASE("bad circuits are rejected") {
  CHECK_THROWS_AS(Circuit(2, 3, {0, 0}, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(Circuit(2, 3, {0}, {1}), InvalidArgument);
  const std::vector<int> bad = {1, 1, 0, -1, -1, 0};
  CHECK_THROWS_AS(Circuit::from_signs(2, 3, bad), InvalidArgument);
}

TEST_CASE("instances and assignments") {
  const Instance inst({Rational(3), Rational(3)}, {Rational(2), Rational(2), Rational(2)});
  const Matrix o = parse_matrix("2,1,0;0,1,2");
  CHECK(inst.is_feasible(o));
  CHECK_FALSE(inst.is_feasible(parse_matrix("3,0,0;0,1,2")));
  CHECK_THROWS_AS(Assignment(inst, parse_matrix("3,0,0;0,1,2")), InvalidArgument);
  const Assignment a(inst, o);
  const Assignment b(inst, parse_matrix("0,1,2;2,1,0"));
  CHECK(a.is_vertex());
  CHECK(edge_distance(a, b) == 2);
  CHECK(objective(parse_matrix("0,1,2;2,1,0"), o) == Rational(2));
}

TEST_CASE("walk replay and reversal") {
  const Matrix o = parse_matrix("2,1,0;0,1,2");
  Walk w(WalkKind::kCDfm, o);
  w.append(Circuit(2, 3, {0, 1}, {2, 0}), Rational(2));
  CHECK(w.back() == parse_matrix("0,1,2;2,1,0"));
  CHECK(w.replays_exactly());
  const Walk r = w.reversed();
  CHECK(r.front() == w.back());
  CHECK(r.back() == o);
  CHECK(r.replays_exactly());
  CHECK(walk_kind_name(WalkKind::kCDfm) == "CD_fm");
  CHECK(parse_walk_kind("CD_e") == WalkKind::kCDe);
}

TEST_CASE("sign compatibility") {
  CHECK(sign_compatible(parse_matrix("1,0;-1,2"), parse_matrix("3,5;0,1")));
  CHECK_FALSE(sign_compatible(parse_matrix("1,0;-1,2"), parse_matrix("3,5;1,1")));
}
