#pragma once

#include <optional>
#include <vector>

#include "robcons/design.hpp"
#include "robcons/graph.hpp"
#include "robcons/tree_search.hpp"

namespace robcons {

// Circulant graph (Z_n, {+-s_1, ..., +-s_m}) with a per-class tree edge
// profile h and replication factor alpha. Class l holds the edges whose
// endpoints differ by +-generators[l] mod n.
struct CirculantSpec {
  int n = 0;
  std::vector<int> generators;  // strictly increasing, in [1, n/2]
  std::vector<int> h;           // one entry per generator, sums to n-1
  int alpha = 1;
};

struct ClassTag {
  int index = 0;  // position in generators
  int generator = 0;
};

struct CirculantGraph {
  CapacitatedGraph graph;
  std::vector<int> edge_class;  // parallel to graph.edges()
  std::vector<int> generators;

  ClassedGraph classed() const;
  int n() const { return graph.n(); }
};

// Throws kInvalidInput for malformed generators/alpha, kNotConnected when the
// generators do not generate Z_n, and kInvalidProfile when h does not sum to
// n-1 or no class with h >= 1 has a generator coprime to n.
void ValidateSpec(const CirculantSpec& spec);

// Unit-capacity circulant graph; throws kNotConnected / kInvalidInput.
CirculantGraph BuildCirculantGraph(int n, const std::vector<int>& generators);

// Circulant graph with class-l capacity h[l] * alpha.
CirculantGraph BuildCirculant(const CirculantSpec& spec);

bool IsSelfInverse(int n, int generator);

// Throws kInvalidInput when (u, v) is not an edge.
ClassTag EdgeClass(int n, const std::vector<int>& generators, int u, int v);

// Maps every node x to (x + delta) mod n.
SpanningTree RotateTree(const SpanningTree& tree, int delta, int n);

// Class-constrained minimum average distance spanning tree rooted at node 0.
TreeSearchResult FindCmad(const CirculantSpec& spec,
                          const TreeSearchOptions& options = {});

// Unconstrained minimum average distance spanning tree of (Z_n, S).
TreeSearchResult FindMad(int n, const std::vector<int>& generators,
                         const TreeSearchOptions& options = {});

struct Algorithm1Options {
  TreeSearchOptions search;
  // Per-class capacities replacing h[l] * alpha.
  std::optional<std::vector<int>> capacity_override;
};

// k = alpha * n subgraphs: subgraphs [j*alpha, (j+1)*alpha) are copies of the
// cMAD tree rotated from root 0 to root j. Throws
// kSelfInverseCapacityViolation (or kCapacityExceeded for a regular class)
// when the rotated trees use some edge more often than its capacity.
DesignSolution Algorithm1(const CirculantSpec& spec,
                          const Algorithm1Options& options = {});

}  // namespace robcons
