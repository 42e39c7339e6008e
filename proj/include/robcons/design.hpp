#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robcons/extended_real.hpp"
#include "robcons/graph.hpp"
#include "robcons/tree_search.hpp"

namespace robcons {

// An assignment of base-graph edges to k state dimensions: subgraphs[l] is
// the edge set carrying dimension l.
struct DesignSolution {
  CapacitatedGraph base;
  int k = 0;
  std::vector<EdgeList> subgraphs;
  ExtendedReal cost;
  std::map<std::string, bool> flags;
};

// Sum of H* over the subgraphs, each on n nodes.
ExtendedReal SolutionCost(int n, const std::vector<EdgeList>& subgraphs);

// Canonicalizes every subgraph and computes the cost.
DesignSolution MakeSolution(CapacitatedGraph base, std::vector<EdgeList> subgraphs,
                            std::map<std::string, bool> flags = {});

enum class FeasibilityVerdict { kNecessaryConditionsHold, kProvablyInfeasible };

struct FeasibilityReport {
  std::int64_t min_cut_capacity = 0;
  bool min_cut_ok = false;
  std::int64_t total_capacity = 0;
  bool total_ok = false;
  FeasibilityVerdict verdict = FeasibilityVerdict::kProvablyInfeasible;
};

// Necessary conditions for a finite-cost design: min cut capacity >= k and
// total capacity >= k(n-1). Passing both does not guarantee feasibility.
// Throws kInvalidInput for a disconnected base graph or k < 1.
FeasibilityReport CheckFeasibility(const CapacitatedGraph& g, int k);

// Closed-form optimum on K_n with every capacity 2*alpha and k = alpha*n:
// k stars, each node the hub of exactly alpha of them. Subgraphs
// [j*alpha, (j+1)*alpha) are stars centered at node j.
DesignSolution SolveComplete(int n, int alpha);

struct Violation {
  std::string code;
  int subgraph = -1;
  std::optional<Edge> edge;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Checks subgraph membership in the base graph, per-edge capacity usage,
// connectivity of each subgraph, and the stored cost against a fresh
// computation. Never throws for a malformed solution.
ValidationReport ValidateSolution(const DesignSolution& solution);

struct BruteForceLimits {
  // Maximum |E| * k for unrestricted membership enumeration.
  int max_membership_bits = 18;
  int max_k = 64;
  // Maximum number of candidate subgraphs per dimension.
  std::size_t max_candidates = 200000;
};

// Exhaustive optimum of the assignment problem. When the total capacity is
// exactly k(n-1), finite-cost subgraphs are necessarily spanning trees and
// only those are enumerated; otherwise all connected spanning subgraphs are.
// Ties are broken by the lexicographically smallest sorted list of subgraph
// edge lists. When no finite-cost assignment exists, returns k empty
// subgraphs with infinite cost and flags["feasible"] = false.
// Throws kTooLarge when the limits are exceeded.
DesignSolution BruteForce(const CapacitatedGraph& g, int k,
                          const BruteForceLimits& limits = {});

struct GapReport {
  double lower = 0.0;         // k * H*(MAD tree)
  ExtendedReal achieved;      // solution cost
  double delta = 0.0;         // (achieved - lower) / achieved
  bool lower_heuristic = false;
};

GapReport ComputeGapReport(double mad_tree_hstar, const DesignSolution& solution,
                           bool lower_heuristic = false);

// Finds the MAD tree of the solution's base graph first.
GapReport ComputeGapReport(const DesignSolution& solution,
                           const TreeSearchOptions& options = {});

}  // namespace robcons
