#include "robcons/allocation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

AllocationState::AllocationState(CapacitatedGraph g, int k,
                                 std::vector<EdgeList> initial)
    : g_(std::move(g)), k_(k), initial_(std::move(initial)) {
  if (k_ < 1) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  if (static_cast<int>(initial_.size()) != k_) {
    throw Error(ErrorCode::kInvalidInput,
                "initial solution has " + std::to_string(initial_.size()) +
                    " subgraphs, expected " + std::to_string(k_));
  }
  if (g_.n() < 2) throw Error(ErrorCode::kInvalidInput, "need n >= 2");
  remaining_ = g_.capacities();
  member_.assign(k_, std::vector<char>(g_.num_edges(), 0));
  for (int l = 0; l < k_; ++l) {
    initial_[l] = CanonicalEdges(std::move(initial_[l]));
    for (const Edge& e : initial_[l]) {
      const std::size_t i = EdgeIndexOrThrow(e);
      if (member_[l][i]) {
        throw Error(ErrorCode::kInvalidInput, "duplicate edge in initial subgraph");
      }
      member_[l][i] = 1;
      if (--remaining_[i] < 0) {
        throw Error(ErrorCode::kInvalidInput,
                    "initial solution exceeds capacity of edge (" +
                        std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      }
    }
    if (!IsConnected(g_.n(), initial_[l])) {
      throw Error(ErrorCode::kInvalidInput,
                  "initial subgraph " + std::to_string(l) + " is disconnected");
    }
  }
  inverse_sum_.resize(k_);
  for (int l = 0; l < k_; ++l) {
    inverse_sum_[l] = InverseEigenvalueSum(g_.n(), initial_[l]).value();
  }
}

std::size_t AllocationState::EdgeIndexOrThrow(const Edge& e) const {
  auto idx = g_.edge_index(e.u, e.v);
  if (!idx) {
    throw Error(ErrorCode::kInvalidInput,
                "(" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    ") is not an edge of the base graph");
  }
  return *idx;
}

int AllocationState::remaining(const Edge& e) const {
  return remaining_[EdgeIndexOrThrow(e)];
}

EdgeList AllocationState::dimension_edges(int dim) const {
  EdgeList out;
  for (std::size_t i = 0; i < g_.num_edges(); ++i)
    if (member_[dim][i]) out.push_back(g_.edges()[i]);
  return out;
}

std::vector<EdgeList> AllocationState::current_subgraphs() const {
  std::vector<EdgeList> out;
  for (int l = 0; l < k_; ++l) out.push_back(dimension_edges(l));
  return out;
}

bool AllocationState::contains(const EdgeDimPair& p) const {
  if (p.dim < 0 || p.dim >= k_) throw Error(ErrorCode::kInvalidInput, "bad dimension");
  return member_[p.dim][EdgeIndexOrThrow(p.edge)] != 0;
}

std::vector<EdgeDimPair> AllocationState::feasible_pairs() const {
  std::vector<EdgeDimPair> out;
  for (std::size_t i = 0; i < g_.num_edges(); ++i) {
    if (remaining_[i] <= 0) continue;
    for (int l = 0; l < k_; ++l)
      if (!member_[l][i]) out.push_back({g_.edges()[i], l});
  }
  return out;
}

std::vector<EdgeDimPair> AllocationState::ground_set() const {
  std::vector<EdgeDimPair> out;
  for (std::size_t i = 0; i < g_.num_edges(); ++i) {
    for (int l = 0; l < k_; ++l) {
      const Edge& e = g_.edges()[i];
      if (!std::binary_search(initial_[l].begin(), initial_[l].end(), e)) {
        out.push_back({e, l});
      }
    }
  }
  return out;
}

void AllocationState::add(const EdgeDimPair& p) {
  if (contains(p)) throw Error(ErrorCode::kInvalidInput, "pair already present");
  const std::size_t i = EdgeIndexOrThrow(p.edge);
  if (remaining_[i] <= 0) throw Error(ErrorCode::kBlocked, "edge capacity exhausted");
  member_[p.dim][i] = 1;
  --remaining_[i];
  chosen_.push_back({Edge::Canonical(p.edge.u, p.edge.v), p.dim});
  inverse_sum_[p.dim] = InverseEigenvalueSum(g_.n(), dimension_edges(p.dim)).value();
}

double Objective(const AllocationState& state) {
  double total = 0.0;
  for (int l = 0; l < state.k(); ++l) total -= state.inverse_eigenvalue_sum(l);
  return total;
}

double Objective(int n, const std::vector<EdgeList>& dims) {
  double total = 0.0;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    const ExtendedReal sum = InverseEigenvalueSum(n, dims[l]);
    if (sum.is_infinite()) {
      throw Error(ErrorCode::kInvalidState,
                  "dimension " + std::to_string(l) + " is disconnected");
    }
    total -= sum.value();
  }
  return total;
}

namespace {

void CheckAddable(const AllocationState& state, const EdgeDimPair& p) {
  if (state.contains(p)) throw Error(ErrorCode::kInvalidInput, "pair already present");
  if (state.remaining(p.edge) <= 0) {
    throw Error(ErrorCode::kBlocked, "edge capacity exhausted");
  }
}

}  // namespace

double MarginalGain(const AllocationState& state, const EdgeDimPair& p) {
  CheckAddable(state, p);
  EdgeList edges = state.dimension_edges(p.dim);
  edges.push_back(Edge::Canonical(p.edge.u, p.edge.v));
  const double after = InverseEigenvalueSum(state.n(), edges).value();
  return state.inverse_eigenvalue_sum(p.dim) - after;
}

double MarginalGainRankOne(const AllocationState& state, const EdgeDimPair& p) {
  CheckAddable(state, p);
  const int n = state.n();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd lap = Laplacian(n, state.dimension_edges(p.dim));
  // L+ = (L + 11'/n)^-1 - 11'/n on a connected graph.
  const Eigen::MatrixXd pinv = (lap + ones).ldlt().solve(
                                   Eigen::MatrixXd::Identity(n, n)) - ones;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(p.edge.u) = 1.0;
  b(p.edge.v) = -1.0;
  const Eigen::VectorXd pb = pinv * b;
  return pb.squaredNorm() / (1.0 + b.dot(pb));
}

AllocationResult GreedyAllocate(const CapacitatedGraph& g, int k,
                                std::vector<EdgeList> initial,
                                const AllocationOptions& options) {
  AllocationResult result{AllocationState(g, k, std::move(initial)), {}, 0.0, 0.0};
  result.initial_objective = Objective(result.state);
  while (true) {
    const auto pairs = result.state.feasible_pairs();
    if (pairs.empty()) break;
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double gain = options.rank_one_update
                              ? MarginalGainRankOne(result.state, pairs[i])
                              : MarginalGain(result.state, pairs[i]);
      // Strictly larger wins; pairs come in (edge, dim) order.
      if (gain > best_gain + 1e-12 * std::max(1.0, std::abs(best_gain))) {
        best_gain = gain;
        best = i;
      }
    }
    result.state.add(pairs[best]);
    result.steps.push_back({pairs[best], best_gain});
  }
  result.final_objective = Objective(result.state);
  return result;
}

AllocationResult ExhaustiveAllocate(const CapacitatedGraph& g, int k,
                                    std::vector<EdgeList> initial,
                                    const ExhaustiveLimits& limits) {
  AllocationState base(g, k, std::move(initial));
  // Candidates grouped by edge; each group may contribute at most the
  // edge's remaining capacity.
  std::vector<std::vector<EdgeDimPair>> groups;
  std::vector<int> room;
  std::size_t total = 0;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const int r = base.remaining()[i];
    if (r <= 0) continue;
    std::vector<EdgeDimPair> group;
    for (int l = 0; l < k; ++l) {
      EdgeDimPair p{g.edges()[i], l};
      if (!base.contains(p)) group.push_back(p);
    }
    if (group.empty()) continue;
    total += group.size();
    groups.push_back(std::move(group));
    room.push_back(r);
  }
  if (total > limits.max_candidates) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(total) + " candidate pairs exceed " +
                    std::to_string(limits.max_candidates));
  }
  const int n = g.n();
  std::vector<EdgeList> dims = base.current_subgraphs();
  std::vector<EdgeDimPair> picked, best_pick;
  double best_value = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      double value = 0.0;
      for (const EdgeList& d : dims) value -= InverseEigenvalueSum(n, d).value();
      if (!std::isfinite(best_value) ||
          value > best_value + 1e-12 * std::max(1.0, std::abs(best_value))) {
        best_value = value;
        best_pick = picked;
      }
      return;
    }
    const auto& group = groups[gi];
    const std::size_t size = group.size();
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
      if (std::popcount(mask) > room[gi]) continue;
      for (std::size_t j = 0; j < size; ++j) {
        if (mask >> j & 1u) {
          dims[group[j].dim].push_back(group[j].edge);
          picked.push_back(group[j]);
        }
      }
      rec(gi + 1);
      for (std::size_t j = size; j-- > 0;) {
        if (mask >> j & 1u) {
          dims[group[j].dim].pop_back();
          picked.pop_back();
        }
      }
    }
  };
  rec(0);
  AllocationResult result{base, {}, Objective(base), 0.0};
  std::sort(best_pick.begin(), best_pick.end());
  for (const EdgeDimPair& p : best_pick) {
    const double gain = MarginalGain(result.state, p);
    result.state.add(p);
    result.steps.push_back({p, gain});
  }
  result.final_objective = Objective(result.state);
  return result;
}

}  // namespace robcons
