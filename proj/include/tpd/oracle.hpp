#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tpd/core.hpp"
#include "tpd/polytope.hpp"

namespace tpd {

// Vertex set with its edge graph (adjacency by the unique-cycle test).
struct VertexGraph {
  VertexSet vertices;
  std::vector<std::vector<int>> adjacency;

  int size() const { return vertices.size(); }
};

VertexGraph build_vertex_graph(const Instance& inst, std::uint64_t max_trees = kDefaultMaxTrees);

/// BFS distances from `source`; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const VertexGraph& g, int source);

/// Throws InvalidArgument if an endpoint is not a vertex of the graph.
int graph_distance(const VertexGraph& g, const Matrix& from, const Matrix& to);

struct DistanceTable {
  std::vector<std::vector<int>> dist;

  int diameter() const;
};

DistanceTable all_pairs_distances(const VertexGraph& g, int workers = 1);
int graph_diameter(const VertexGraph& g, int workers = 1);

inline constexpr std::uint64_t kDefaultMaxStates = 5'000'000;
inline constexpr std::uint64_t kDefaultMaxSolves = 10'000'000;

struct SearchLimits {
  /// Deepest level explored; -1 means m+n.
  int depth_cap = -1;
  /// Ceiling on stored states; exceeding it throws ResourceLimitError.
  std::uint64_t max_states = kDefaultMaxStates;
};

/// Fewest maximal feasible circuit steps from `from` to each target, or
/// nullopt when a target is not reached within the depth cap.
std::vector<std::optional<int>> cdfm_distances(const Matrix& from, const std::vector<Matrix>& targets,
                                               const std::vector<Circuit>& circuits, SearchLimits limits = {});
std::optional<int> cdfm_distance(const Matrix& from, const Matrix& to, const std::vector<Circuit>& circuits,
                                 SearchLimits limits = {});

/// Whether to - from is a positive combination of at most k oriented circuits.
/// `circuits` holds one orientation per cycle (as enumerate_circuits returns).
bool cd_at_most(const Matrix& from, const Matrix& to, int k, const std::vector<Circuit>& circuits,
                std::uint64_t max_solves = kDefaultMaxSolves);

/// Smallest k with cd_at_most(from, to, k).
int min_cd(const Matrix& from, const Matrix& to, const std::vector<Circuit>& circuits,
           std::uint64_t max_solves = kDefaultMaxSolves);

}  // namespace tpd
