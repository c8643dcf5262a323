#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tpd/core.hpp"

namespace tpd {

inline constexpr std::uint64_t kDefaultMaxCircuits = 10'000'000;

/// Unoriented even simple cycles of K_{m,n}: sum_k C(m,k) C(n,k) k! (k-1)! / 2.
std::uint64_t circuit_count(int m, int n);

/// Every circuit of K_{m,n} once, in canonical orientation, sorted by signs.
std::vector<Circuit> enumerate_circuits(int m, int n, std::uint64_t max_circuits = kDefaultMaxCircuits);

/// Largest feasible step along g from y: the minimum flow over the decreased
/// edges, or nullopt when one of them carries no flow.
std::optional<Rational> max_step(const Matrix& y, const Circuit& g);

/// y + alpha*g. No feasibility check.
Matrix apply_step(const Matrix& y, const Circuit& g, const Rational& alpha);

struct PivotResult {
  Edge inserted;
  Circuit circuit;
  Rational alpha;
  Matrix result;
  /// Decreased edges whose flow drops to zero.
  std::vector<Edge> deleted;
};

/// Inserts `edge` into the forest support of `vertex` and pushes the maximal
/// flow around the unique cycle it closes, oriented to increase `edge`.
PivotResult pivot(const Matrix& vertex, const Edge& edge);

struct DecompositionTerm {
  Circuit circuit;
  Rational coefficient;
};
using Decomposition = std::vector<DecompositionTerm>;

/// Conformal decomposition of to - from into sign-compatible circuits.
Decomposition sign_compatible_decomposition(const Matrix& from, const Matrix& to);

/// The walk from `from` applying the decomposition terms in order (kind CD_s).
Walk decomposition_walk(const Matrix& from, const Decomposition& terms);

}  // namespace tpd
