#pragma once

#include <compare>
#include <vector>

#include "robcons/graph.hpp"

namespace robcons {

// Ground-set element of the allocation matroid: edge `edge` added to the
// subgraph of dimension `dim` (0-based).
struct EdgeDimPair {
  Edge edge;
  int dim = 0;

  friend constexpr auto operator<=>(const EdgeDimPair&, const EdgeDimPair&) = default;
};

// Spare capacity allocated on top of a feasible, all-connected initial
// assignment. Remaining capacity of edge e is c_e minus its uses in the
// initial subgraphs minus the pairs chosen for it so far.
class AllocationState {
 public:
  // Throws kInvalidInput when the initial assignment has the wrong number of
  // subgraphs, uses an edge outside the base graph, exceeds a capacity or
  // has a disconnected subgraph.
  AllocationState(CapacitatedGraph g, int k, std::vector<EdgeList> initial);

  const CapacitatedGraph& graph() const { return g_; }
  int k() const { return k_; }
  int n() const { return g_.n(); }
  const std::vector<EdgeList>& initial() const { return initial_; }
  const std::vector<EdgeDimPair>& chosen() const { return chosen_; }
  const std::vector<int>& remaining() const { return remaining_; }
  int remaining(const Edge& e) const;

  // Initial plus chosen edges per dimension, canonical order.
  std::vector<EdgeList> current_subgraphs() const;
  EdgeList dimension_edges(int dim) const;

  bool contains(const EdgeDimPair& p) const;
  // Pairs not yet present whose edge still has remaining capacity, in
  // (edge, dim) order.
  std::vector<EdgeDimPair> feasible_pairs() const;
  // Pairs not in the initial assignment, regardless of capacity.
  std::vector<EdgeDimPair> ground_set() const;

  // Throws kInvalidInput when already present, kBlocked when the edge has no
  // remaining capacity.
  void add(const EdgeDimPair& p);

  // sum_{i>=2} 1/lambda_i of the dimension's Laplacian (cached).
  double inverse_eigenvalue_sum(int dim) const { return inverse_sum_[dim]; }

 private:
  std::size_t EdgeIndexOrThrow(const Edge& e) const;

  CapacitatedGraph g_;
  int k_;
  std::vector<EdgeList> initial_;
  std::vector<EdgeDimPair> chosen_;
  std::vector<int> remaining_;
  std::vector<std::vector<char>> member_;  // [dim][edge]
  std::vector<double> inverse_sum_;
};

// -sum_l sum_{i>=2} 1/lambda_i(L_l), i.e. -2n * sum_l H*(G_l).
double Objective(const AllocationState& state);
// Same value for explicit dimension graphs on n nodes. Throws kInvalidState
// when one of them is disconnected.
double Objective(int n, const std::vector<EdgeList>& dims);

// Objective increase from adding `p`, by a fresh eigendecomposition.
// Throws kInvalidInput when `p` is present, kBlocked when capacity is used up.
double MarginalGain(const AllocationState& state, const EdgeDimPair& p);

// Same value through the rank-one update of the Laplacian pseudoinverse:
// |L+ b|^2 / (1 + b' L+ b) with b = e_u - e_v.
double MarginalGainRankOne(const AllocationState& state, const EdgeDimPair& p);

struct AllocationStep {
  EdgeDimPair pair;
  double gain = 0.0;
};

struct AllocationResult {
  AllocationState state;
  std::vector<AllocationStep> steps;
  double initial_objective = 0.0;
  double final_objective = 0.0;

  double gain() const { return final_objective - initial_objective; }
};

struct AllocationOptions {
  bool rank_one_update = false;
};

// Repeatedly adds the feasible pair of largest marginal gain until no pair
// fits. Ties go to the smallest (edge, dim).
AllocationResult GreedyAllocate(const CapacitatedGraph& g, int k,
                                std::vector<EdgeList> initial,
                                const AllocationOptions& options = {});

struct ExhaustiveLimits {
  std::size_t max_candidates = 20;
};

// Optimal allocation by enumerating every capacity-respecting subset of the
// ground set. Throws kTooLarge beyond `limits.max_candidates` pairs.
AllocationResult ExhaustiveAllocate(const CapacitatedGraph& g, int k,
                                    std::vector<EdgeList> initial,
                                    const ExhaustiveLimits& limits = {});

}  // namespace robcons
