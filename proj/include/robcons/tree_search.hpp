#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "robcons/graph.hpp"

namespace robcons {

// A graph whose edges carry a class label in [0, num_classes).
struct ClassedGraph {
  int n = 0;
  EdgeList edges;
  std::vector<int> edge_class;
  int num_classes = 1;
};

struct TreeSearchOptions {
  // Graphs with at most this many nodes are solved exactly.
  int exact_threshold = 16;
  // Upper bound on the exact search table, in bytes. Larger instances fall
  // back to local search.
  std::size_t exact_memory_limit = std::size_t{1} << 30;
  int restarts = 32;
  // Perturb-and-descend rounds per restart.
  int iterations = 300;
  std::uint64_t seed = 0;
};

struct TreeSearchResult {
  SpanningTree tree;
  std::int64_t wiener = 0;  // sum of tree distances over unordered pairs
  bool heuristic = false;
  std::vector<int> class_counts;

  double average_distance() const;
  double hstar() const;
};

// Spanning tree of minimum average distance. With a profile, the tree must
// contain exactly profile[c] edges of class c (profile sums to n-1).
//
// Throws kNotConnected when the graph is disconnected and kInfeasibleProfile
// when no spanning tree has the requested profile.
TreeSearchResult MinAverageDistanceTree(
    const ClassedGraph& g, const std::optional<std::vector<int>>& profile,
    const TreeSearchOptions& options = {});

// Some spanning tree with exactly profile[c] edges of class c, found by
// matroid intersection (graphic matroid with a partition matroid). Edges are
// tried in `preference` order (graph edge indices) before augmenting.
// Returns graph edge indices, or nullopt when no such tree exists.
std::optional<std::vector<int>> TreeWithProfile(
    const ClassedGraph& g, std::span<const int> profile,
    std::span<const int> preference = {});

}  // namespace robcons
