#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tpd/core.hpp"
#include "tpd/oracle.hpp"

namespace tpd {

// A named instance with two vertices O (`from`) and F (`to`) and the values
// the construction is known to produce.
struct GeneratedCase {
  std::string name;
  Instance instance;
  Matrix from;
  Matrix to;
  /// Circuits the margins are built from; perturbation follows them in order.
  std::vector<Circuit> circuits;
  std::map<std::string, int> expected;
  Rational eps;
};

/// u=(3,3), v=(2,2,2) with the two mirrored assignments.
GeneratedCase gen_example1();
/// u=(2n-1,2n-1), v=(2n,2,...,2): CD_fm and CD_e distances both n-1.
GeneratedCase gen_coincide(int n);
/// u=(2n-3,2n-3), v=(2n-4,2,...,2): graph distance n.
GeneratedCase gen_diameter_n(int n);

/// The k = min((m-1)(n-1), m+n-1) sign-compatible independent circuits used
/// for the lower bound, families (a)-(e) in order.
std::vector<Circuit> hirsch_sharp_circuits(int m, int n);
GeneratedCase gen_hirsch_sharp(int m, int n);

/// Adds eps^i to the margins at every node of circuit i (1-based) and re-solves
/// both vertices on their supports. eps = 0 returns the case unchanged.
GeneratedCase perturb(const GeneratedCase& base, const Rational& eps);

/// perturb() starting at `eps`, halving until no k-1 circuits reach F from O.
GeneratedCase perturb_certified(const GeneratedCase& base, Rational eps = Rational(1, 1024),
                                int max_halvings = 16, std::uint64_t max_solves = kDefaultMaxSolves);

/// "example1", "coincide:N", "diameter:N", "hirsch:M,N".
GeneratedCase generate(const std::string& text);

/// Integer margins uniform in [lo, hi], resampled until non-degenerate.
Instance random_instance(int m, int n, std::mt19937_64& rng, int lo = 1, int hi = 50);
/// Integer cost matrix uniform in [lo, hi].
Matrix random_cost(int m, int n, std::mt19937_64& rng, int lo = -9, int hi = 9);

}  // namespace tpd
