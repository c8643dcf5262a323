#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tpd/core.hpp"

namespace tpd {

inline constexpr std::uint64_t kDefaultMaxTrees = 10'000'000;

// All vertices of a transportation polytope, in enumeration order (which is
// deterministic: spanning trees are generated in lexicographic edge order).
struct VertexSet {
  std::vector<Assignment> vertices;
  std::unordered_map<Matrix, int> index;

  int size() const { return static_cast<int>(vertices.size()); }
  /// Position of a vertex with these flows, or -1.
  int find(const Matrix& flows) const;
};

struct HirschData {
  int k = 0;
  int bound = 0;
  EdgeSet critical;
};

/// No nonempty proper M, N with sum u_M = sum v_N.
bool is_nondegenerate(const Instance& inst);

Assignment northwest_corner(const Instance& inst);

/// Unique flow supported on `forest` meeting the margins, if one exists.
/// Zero entries on forest edges are allowed; negative ones are returned as is.
std::optional<Matrix> solve_on_support(const Instance& inst, const EdgeSet& forest);

/// m^(n-1) * n^(m-1), saturating at UINT64_MAX.
std::uint64_t spanning_tree_count(int m, int n);

VertexSet enumerate_vertices(const Instance& inst, std::uint64_t max_trees = kDefaultMaxTrees);

/// Both assignments must be vertices; true iff the union of supports has exactly one cycle.
bool are_adjacent(const Assignment& a, const Assignment& b);

EdgeSet critical_edges(const VertexSet& vs, int m, int n);
HirschData hirsch_data(const VertexSet& vs, int m, int n);
HirschData hirsch_data(const Instance& inst, std::uint64_t max_trees = kDefaultMaxTrees);

// Local structure of a support graph. A demand is mixed when it has degree
// >= 2 and a leaf when it has degree 1.
bool is_mixed_demand(const EdgeSet& support, int j);
bool is_leaf_demand(const EdgeSet& support, int j);
std::vector<int> mixed_demands(const EdgeSet& support);
/// Edges incident to mixed demands.
EdgeSet mixed_edges(const EdgeSet& support);

}  // namespace tpd
