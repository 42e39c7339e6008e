#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "robcons/extended_real.hpp"

namespace robcons {

// Undirected edge in canonical orientation (u < v).
struct Edge {
  int u = 0;
  int v = 0;

  static Edge Canonical(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

// Sorts and canonicalizes edges; does not remove duplicates.
EdgeList CanonicalEdges(EdgeList edges);

// Undirected simple graph on nodes 0..n-1 with a non-negative integer
// capacity per edge. Edges are kept in canonical lexicographic order.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;

  // Throws Error(kInvalidInput) on self-loops, duplicate pairs, out of range
  // endpoints, negative capacities or a size mismatch.
  CapacitatedGraph(int n, EdgeList edges, std::vector<int> capacities);

  // All capacities set to `capacity`.
  static CapacitatedGraph Uniform(int n, EdgeList edges, int capacity = 1);
  static CapacitatedGraph Complete(int n, int capacity = 1);

  int n() const { return n_; }
  const EdgeList& edges() const { return edges_; }
  const std::vector<int>& capacities() const { return capacities_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Index of (a, b) in edges(), in either orientation.
  std::optional<std::size_t> edge_index(int a, int b) const;
  bool has_edge(int a, int b) const { return edge_index(a, b).has_value(); }
  int capacity(int a, int b) const;

 private:
  int n_ = 0;
  EdgeList edges_;
  std::vector<int> capacities_;
  std::vector<int> index_;  // n*n lookup, -1 when absent
};

struct Cut {
  std::vector<int> side_u;
  std::vector<int> side_w;
  EdgeList cutset;
};

// Edges of `edges` with exactly one endpoint in `side`, in canonical order.
Cut MakeCut(int n, std::span<const Edge> edges, std::span<const int> side);

struct SpanningTree {
  int n = 0;
  EdgeList edges;
  int root = 0;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
};

// Laplacian eigenvalues below this count as zero.
double ZeroEigenvalueThreshold(const Spectrum& spectrum);

Eigen::MatrixXd Laplacian(int n, std::span<const Edge> edges);
Eigen::MatrixXd Laplacian(const CapacitatedGraph& g);

Spectrum ComputeSpectrum(int n, std::span<const Edge> edges);
Spectrum ComputeSpectrum(const CapacitatedGraph& g);

// (1/2n) * sum_{i>=2} 1/lambda_i of the unweighted Laplacian; +infinity when
// the graph is disconnected. Throws kInvalidInput when n < 2.
ExtendedReal HStar(int n, std::span<const Edge> edges);
ExtendedReal HStar(const CapacitatedGraph& g);

// sum_{i>=2} 1/lambda_i, the Kirchhoff index divided by n; +infinity when
// disconnected.
ExtendedReal InverseEigenvalueSum(int n, std::span<const Edge> edges);

bool IsConnected(int n, std::span<const Edge> edges);
bool IsConnected(const CapacitatedGraph& g);

// Connected, acyclic, n-1 edges with endpoints in range.
bool IsSpanningTree(const SpanningTree& t);

// Sum of tree distances over unordered pairs. Throws kInvalidInput when `t`
// is not a spanning tree.
std::int64_t WienerIndex(const SpanningTree& t);

// Mean tree distance over unordered node pairs.
double AverageDistance(const SpanningTree& t);

// H* of a tree through its average distance: avg * (n-1) / (4n).
double TreeHStar(const SpanningTree& t);

// Global minimum cut with capacities as weights (Stoer-Wagner). Throws
// kInvalidInput when n < 2.
std::int64_t MinCutCapacity(const CapacitatedGraph& g);

std::int64_t TotalCapacity(const CapacitatedGraph& g);

// All-pairs hop distances by BFS; -1 for unreachable.
std::vector<std::vector<int>> HopDistances(int n, std::span<const Edge> edges);

}  // namespace robcons
