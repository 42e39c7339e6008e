#include "robcons/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

ExtendedReal SolutionCost(int n, const std::vector<EdgeList>& subgraphs) {
  ExtendedReal total(0.0);
  for (const EdgeList& sg : subgraphs) total += HStar(n, sg);
  return total;
}

DesignSolution MakeSolution(CapacitatedGraph base, std::vector<EdgeList> subgraphs,
                            std::map<std::string, bool> flags) {
  DesignSolution s;
  for (auto& sg : subgraphs) sg = CanonicalEdges(std::move(sg));
  s.k = static_cast<int>(subgraphs.size());
  s.cost = SolutionCost(base.n(), subgraphs);
  s.base = std::move(base);
  s.subgraphs = std::move(subgraphs);
  s.flags = std::move(flags);
  return s;
}

FeasibilityReport CheckFeasibility(const CapacitatedGraph& g, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  if (g.n() < 2) throw Error(ErrorCode::kInvalidInput, "need n >= 2");
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kInvalidInput, "base graph is disconnected");
  }
  FeasibilityReport r;
  r.min_cut_capacity = MinCutCapacity(g);
  r.min_cut_ok = r.min_cut_capacity >= k;
  r.total_capacity = TotalCapacity(g);
  r.total_ok = r.total_capacity >= static_cast<std::int64_t>(k) * (g.n() - 1);
  r.verdict = (r.min_cut_ok && r.total_ok)
                  ? FeasibilityVerdict::kNecessaryConditionsHold
                  : FeasibilityVerdict::kProvablyInfeasible;
  return r;
}

DesignSolution SolveComplete(int n, int alpha) {
  if (n < 3) throw Error(ErrorCode::kInvalidInput, "complete-graph solution needs n >= 3");
  if (alpha < 1) throw Error(ErrorCode::kInvalidInput, "alpha must be >= 1");
  std::vector<EdgeList> stars;
  for (int hub = 0; hub < n; ++hub) {
    EdgeList star;
    for (int v = 0; v < n; ++v)
      if (v != hub) star.push_back(Edge::Canonical(hub, v));
    for (int copy = 0; copy < alpha; ++copy) stars.push_back(star);
  }
  return MakeSolution(CapacitatedGraph::Complete(n, 2 * alpha), std::move(stars),
                      {{"optimal", true}, {"unique", true}});
}

ValidationReport ValidateSolution(const DesignSolution& solution) {
  ValidationReport report;
  auto add = [&](std::string code, int sg, std::optional<Edge> e, std::string detail) {
    report.ok = false;
    report.violations.push_back({std::move(code), sg, e, std::move(detail)});
  };
  const CapacitatedGraph& base = solution.base;
  if (static_cast<int>(solution.subgraphs.size()) != solution.k) {
    add("wrong-subgraph-count", -1, std::nullopt,
        "expected " + std::to_string(solution.k) + " subgraphs, found " +
            std::to_string(solution.subgraphs.size()));
  }
  std::vector<int> usage(base.num_edges(), 0);
  for (std::size_t l = 0; l < solution.subgraphs.size(); ++l) {
    std::set<Edge> seen;
    const int sg = static_cast<int>(l);
    for (const Edge& raw : solution.subgraphs[l]) {
      const Edge e = Edge::Canonical(raw.u, raw.v);
      if (!seen.insert(e).second) {
        add("duplicate-edge", sg, e, "edge listed twice in one subgraph");
        continue;
      }
      auto idx = base.edge_index(e.u, e.v);
      if (!idx) {
        add("edge-not-in-base", sg, e, "edge is not in the base graph");
        continue;
      }
      ++usage[*idx];
    }
    bool in_range = std::all_of(seen.begin(), seen.end(), [&](const Edge& e) {
      return e.u >= 0 && e.v < base.n();
    });
    if (!in_range || !IsConnected(base.n(), EdgeList(seen.begin(), seen.end()))) {
      add("infinite-cost-subgraph", sg, std::nullopt, "subgraph is disconnected");
    }
  }
  for (std::size_t i = 0; i < usage.size(); ++i) {
    if (usage[i] > base.capacities()[i]) {
      add("capacity-exceeded", -1, base.edges()[i],
          "used " + std::to_string(usage[i]) + " times, capacity " +
              std::to_string(base.capacities()[i]));
    }
  }
  if (base.n() >= 2) {
    std::vector<EdgeList> in_base;
    for (const EdgeList& sg : solution.subgraphs) {
      EdgeList kept;
      for (const Edge& e : sg)
        if (base.has_edge(e.u, e.v)) kept.push_back(e);
      in_base.push_back(std::move(kept));
    }
    const ExtendedReal fresh = SolutionCost(base.n(), in_base);
    const ExtendedReal stored = solution.cost;
    bool match = fresh.is_infinite() == stored.is_infinite();
    if (match && fresh.is_finite()) {
      match = std::abs(fresh.value() - stored.value()) <=
              1e-9 * std::max(1.0, std::abs(fresh.value()));
    }
    if (!match) {
      add("cost-mismatch", -1, std::nullopt,
          "stored " + stored.to_string(12) + ", recomputed " + fresh.to_string(12));
    }
  }
  return report;
}

namespace {

struct Candidate {
  std::uint64_t mask = 0;
  double cost = 0.0;
  EdgeList edges;
};

bool MaskConnected(int n, const EdgeList& edges, std::uint64_t mask) {
  std::vector<std::uint32_t> nbr(n, 0);
  for (std::uint64_t b = mask; b; b &= b - 1) {
    const Edge& e = edges[std::countr_zero(b)];
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  std::uint32_t reach = 1, all = (n >= 32) ? ~0u : ((1u << n) - 1);
  while (true) {
    std::uint32_t grow = reach;
    for (std::uint32_t b = reach; b; b &= b - 1) grow |= nbr[std::countr_zero(b)];
    if (grow == reach) break;
    reach = grow;
  }
  return reach == all;
}

class AssignmentSearch {
 public:
  AssignmentSearch(const CapacitatedGraph& g, int k, std::vector<Candidate> cands)
      : g_(g), k_(k), cands_(std::move(cands)) {
    min_cost_ = std::numeric_limits<double>::infinity();
    for (const auto& c : cands_) min_cost_ = std::min(min_cost_, c.cost);
    usage_.assign(g.num_edges(), 0);
    node_room_.assign(g.n(), 0);
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      node_room_[g.edges()[i].u] += g.capacities()[i];
      node_room_[g.edges()[i].v] += g.capacities()[i];
    }
  }

  // Best achievable cost, +inf when no assignment exists.
  double OptimalCost() {
    std::vector<int> order(cands_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cands_[a].cost < cands_[b].cost; });
    best_ = std::numeric_limits<double>::infinity();
    std::vector<int> chosen;
    Search(order, 0, 0.0, chosen, /*target=*/-1.0);
    return best_;
  }

  // First assignment, in candidate order, with cost <= target.
  std::vector<int> FirstWithin(double target) {
    std::vector<int> order(cands_.size());
    std::iota(order.begin(), order.end(), 0);
    found_.clear();
    std::vector<int> chosen;
    Search(order, 0, 0.0, chosen, target);
    return found_;
  }

 private:
  // target < 0: minimize into best_; otherwise stop at the first hit.
  bool Search(const std::vector<int>& order, std::size_t start, double partial,
              std::vector<int>& chosen, double target) {
    const int remaining = k_ - static_cast<int>(chosen.size());
    if (remaining == 0) {
      if (target < 0) {
        if (!std::isfinite(best_) || partial < best_ - 1e-12 * std::max(1.0, best_)) {
          best_ = partial;
        }
        return false;
      }
      if (partial > target) return false;
      found_ = chosen;
      return true;
    }
    const double bound = partial + remaining * min_cost_;
    if (target < 0) {
      if (std::isfinite(best_) && bound >= best_ - 1e-12 * std::max(1.0, best_)) {
        return false;
      }
    } else if (bound > target) {
      return false;
    }
    for (int r : node_room_)
      if (r < remaining) return false;
    for (std::size_t p = start; p < order.size(); ++p) {
      const Candidate& c = cands_[order[p]];
      bool fits = true;
      for (std::uint64_t b = c.mask; b; b &= b - 1) {
        const int i = std::countr_zero(b);
        if (usage_[i] >= g_.capacities()[i]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      Apply(c, +1);
      chosen.push_back(order[p]);
      const bool done = Search(order, p, partial + c.cost, chosen, target);
      chosen.pop_back();
      Apply(c, -1);
      if (done) return true;
    }
    return false;
  }

  void Apply(const Candidate& c, int sign) {
    for (std::uint64_t b = c.mask; b; b &= b - 1) {
      const int i = std::countr_zero(b);
      usage_[i] += sign;
      node_room_[g_.edges()[i].u] -= sign;
      node_room_[g_.edges()[i].v] -= sign;
    }
  }

  const CapacitatedGraph& g_;
  int k_;
  std::vector<Candidate> cands_;
  double min_cost_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<int> usage_;
  std::vector<int> node_room_;
  std::vector<int> found_;
};

}  // namespace

DesignSolution BruteForce(const CapacitatedGraph& g, int k,
                          const BruteForceLimits& limits) {
  const int n = g.n();
  if (k < 1) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "need n >= 2");
  if (k > limits.max_k) throw Error(ErrorCode::kTooLarge, "k exceeds limit");
  const int m = static_cast<int>(g.num_edges());
  if (m > 63 || n > 31) throw Error(ErrorCode::kTooLarge, "graph too large");
  const bool tight =
      TotalCapacity(g) == static_cast<std::int64_t>(k) * (n - 1);
  if (!tight && static_cast<long long>(m) * k > limits.max_membership_bits) {
    throw Error(ErrorCode::kTooLarge,
                "|E|*k = " + std::to_string(m * k) + " exceeds " +
                    std::to_string(limits.max_membership_bits));
  }

  std::vector<Candidate> cands;
  auto push = [&](std::uint64_t mask) {
    if (cands.size() >= limits.max_candidates) {
      throw Error(ErrorCode::kTooLarge, "too many candidate subgraphs");
    }
    Candidate c;
    c.mask = mask;
    for (std::uint64_t b = mask; b; b &= b - 1) c.edges.push_back(g.edges()[std::countr_zero(b)]);
    c.cost = HStar(n, c.edges).value();
    cands.push_back(std::move(c));
  };
  // Edges with zero capacity can never be used.
  std::vector<int> usable;
  for (int i = 0; i < m; ++i)
    if (g.capacities()[i] > 0) usable.push_back(i);
  if (tight) {
    // Spanning trees: choose n-1 usable edges without closing a cycle.
    std::vector<int> comp(n);
    std::function<void(std::size_t, int, std::uint64_t, std::vector<int>)> rec =
        [&](std::size_t pos, int picked, std::uint64_t mask, std::vector<int> label) {
          if (picked == n - 1) {
            push(mask);
            return;
          }
          if (static_cast<int>(usable.size() - pos) < n - 1 - picked) return;
          const Edge& e = g.edges()[usable[pos]];
          if (label[e.u] != label[e.v]) {
            std::vector<int> merged = label;
            const int from = label[e.v], to = label[e.u];
            for (int& x : merged)
              if (x == from) x = to;
            rec(pos + 1, picked + 1, mask | (std::uint64_t{1} << usable[pos]), std::move(merged));
          }
          rec(pos + 1, picked, mask, std::move(label));
        };
    std::iota(comp.begin(), comp.end(), 0);
    rec(0, 0, 0, comp);
  } else {
    const std::uint64_t limit = std::uint64_t{1} << usable.size();
    for (std::uint64_t bits = 1; bits < limit; ++bits) {
      std::uint64_t mask = 0;
      for (std::uint64_t b = bits; b; b &= b - 1)
        mask |= std::uint64_t{1} << usable[std::countr_zero(b)];
      if (std::popcount(mask) >= n - 1 && MaskConnected(n, g.edges(), mask)) push(mask);
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.edges < b.edges; });

  AssignmentSearch search(g, k, cands);
  const double best = cands.empty() ? std::numeric_limits<double>::infinity()
                                    : search.OptimalCost();
  if (!std::isfinite(best)) {
    DesignSolution none = MakeSolution(g, std::vector<EdgeList>(k), {{"feasible", false}});
    return none;
  }
  std::vector<int> pick = search.FirstWithin(best + 1e-9 * std::max(1.0, best));
  std::vector<EdgeList> subgraphs;
  for (int idx : pick) subgraphs.push_back(cands[idx].edges);
  return MakeSolution(g, std::move(subgraphs), {{"feasible", true}, {"optimal", true}});
}

GapReport ComputeGapReport(double mad_tree_hstar, const DesignSolution& solution,
                           bool lower_heuristic) {
  GapReport r;
  r.lower = solution.k * mad_tree_hstar;
  r.achieved = solution.cost;
  r.lower_heuristic = lower_heuristic;
  if (r.achieved.is_infinite()) {
    r.delta = 1.0;
  } else if (r.achieved.value() > 0.0) {
    r.delta = (r.achieved.value() - r.lower) / r.achieved.value();
  }
  return r;
}

GapReport ComputeGapReport(const DesignSolution& solution,
                           const TreeSearchOptions& options) {
  const CapacitatedGraph& g = solution.base;
  ClassedGraph cg{g.n(), g.edges(), std::vector<int>(g.num_edges(), 0), 1};
  TreeSearchResult mad = MinAverageDistanceTree(cg, std::nullopt, options);
  return ComputeGapReport(mad.hstar(), solution, mad.heuristic);
}

}  // namespace robcons
