#include <doctest.h>

#include "tpd/circuits.hpp"
#include "tpd/instances.hpp"
#include "tpd/walks.hpp"

using namespace tpd;

namespace {

const Circuit kLong(2, 3, {0, 1}, {2, 0});

}  // namespace

TEST_CASE("the one-step walk of the example is maximal") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCDfm, c.from);
  w.append(kLong, Rational(2));
  const WalkReport r = validate_walk(w, c.instance);
  CHECK(r.valid);
  CHECK(w.back() == c.to);
  CHECK_FALSE(validate_walk(w, c.instance, WalkKind::kCDe).valid);
}

TEST_CASE("a short step is feasible but not maximal") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCDfm, c.from);
  w.append(kLong, Rational(1));
  w.append(kLong, Rational(1));
  CHECK(validate_walk(w, c.instance, WalkKind::kCDf).valid);
  const WalkReport r = validate_walk(w, c.instance, WalkKind::kCDfm);
  CHECK_FALSE(r.valid);
  REQUIRE(r.violation);
  CHECK(r.violation->step == 0);
}

TEST_CASE("an overlong step leaves the polytope") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCD, c.from);
  w.append(kLong, Rational(3));
  w.append(kLong.negated(), Rational(1));
  CHECK(validate_walk(w, c.instance).valid);
  CHECK_FALSE(validate_walk(w, c.instance, WalkKind::kCDf).valid);
}

TEST_CASE("edge walks need adjacent vertices") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCDe, c.from);
  for (const Edge& e : {Edge{0, 2}, Edge{1, 0}, Edge{0, 1}}) {
    const PivotResult p = pivot(w.back(), e);
    w.append(p.circuit, p.alpha);
  }
  CHECK(validate_walk(w, c.instance).valid);
  CHECK(w.back() == c.to);
  // The maximal one-step walk is not an edge walk: its endpoints are not adjacent.
  Walk jump(WalkKind::kCDe, c.from);
  jump.append(kLong, Rational(2));
  CHECK_FALSE(validate_walk(jump, c.instance).valid);
}

TEST_CASE("walks must end at vertices") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCDf, c.from);
  w.append(kLong, Rational(1));
  const WalkReport r = validate_walk(w, c.instance);
  CHECK_FALSE(r.valid);
  REQUIRE(r.violation);
  CHECK(r.violation->step == -1);
}

TEST_CASE("monotonicity") {
  const GeneratedCase c = gen_example1();
  Walk w(WalkKind::kCDfm, c.from);
  w.append(kLong, Rational(2));
  const Matrix s = parse_matrix("0,1,2;2,1,0");
  CHECK(is_monotone(w, s));
  CHECK_FALSE(is_monotone(w.reversed(), s));
}
