#include <doctest.h>

#include "tpd/circuits.hpp"
#include "tpd/errors.hpp"

using namespace tpd;

namespace {

// Edge subsets of K_{m,n} in which every node has degree 0 or 2 and the used
// nodes are connected: exactly the simple cycles.
int brute_cycle_count(int m, int n) {
  const int e = m * n;
  int count = 0;
  for (std::uint32_t mask = 1; mask < (1U << e); ++mask) {
    EdgeSet s(m, n);
    for (int k = 0; k < e; ++k) {
      if (mask >> k & 1U) s.insert({k / n, k % n});
    }
    bool ok = true;
    int nodes = 0;
    for (int i = 0; i < m; ++i) {
      const int d = s.supply_degree(i);
      ok = ok && (d == 0 || d == 2);
      nodes += d > 0;
    }
    for (int j = 0; j < n; ++j) {
      const int d = s.demand_degree(j);
      ok = ok && (d == 0 || d == 2);
      nodes += d > 0;
    }
    // With all degrees 2, one cycle means |E| = |V| and cyclomatic number 1.
    if (ok && s.size() == nodes && cyclomatic_number(s) == 1) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("circuit counts") {
  CHECK(enumerate_circuits(2, 2).size() == 1);
  CHECK(enumerate_circuits(2, 3).size() == 3);
  CHECK(enumerate_circuits(3, 3).size() == 15);
  CHECK(circuit_count(3, 4) == 42);
  CHECK(circuit_count(4, 4) == 204);
  CHECK(circuit_count(5, 5) == 3940);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 2; n <= 4; ++n) CHECK(enumerate_circuits(m, n).size() == circuit_count(m, n));
  }
}

TEST_CASE("circuit counts agree with a subset scan") {
  for (const auto& [m, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}}) {
    CHECK(static_cast<int>(circuit_count(m, n)) == brute_cycle_count(m, n));
  }
}

TEST_CASE("max step and application") {
  const Matrix o = parse_matrix("2,1,0;0,1,2");
  const Circuit g(2, 3, {0, 1}, {2, 0});  // +(1,3) -(2,3) +(2,1) -(1,1)
  const auto alpha = max_step(o, g);
  REQUIRE(alpha);
  CHECK(*alpha == Rational(2));
  CHECK(apply_step(o, g, *alpha) == parse_matrix("0,1,2;2,1,0"));
  CHECK_FALSE(max_step(o, g.negated()));
}

TEST_CASE("pivot deletes exactly the bottleneck edge") {
  const Matrix o = parse_matrix("2,1,0;0,1,2");
  const PivotResult p = pivot(o, {0, 2});
  CHECK(p.alpha == Rational(1));
  CHECK(p.result == parse_matrix("2,0,1;0,2,1"));
  REQUIRE(p.deleted.size() == 1);
  CHECK(p.deleted.front() == Edge{0, 1});
  CHECK_THROWS_AS(pivot(o, {0, 0}), InvalidArgument);
}

TEST_CASE("sign-compatible decomposition of the perturbed example") {
  const Rational e(1, 1024);
  const Matrix o = Matrix::from_rows({{2 + e, 1, 0}, {0, 1 + e, 2}});
  const Matrix f = Matrix::from_rows({{0, 1 + e, 2}, {2 + e, 1, 0}});
  const Decomposition d = sign_compatible_decomposition(o, f);
  REQUIRE(d.size() == 2);
  Rational total;
  for (const auto& t : d) {
    CHECK(sign_compatible(t.circuit.as_matrix(), f - o));
    total += t.coefficient;
  }
  CHECK(total == 2 + e);
  const Walk w = decomposition_walk(o, d);
  CHECK(w.back() == f);
  CHECK(w.kind() == WalkKind::kCDs);
}
