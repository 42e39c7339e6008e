#include "robcons/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

EdgeList CanonicalEdges(EdgeList edges) {
  for (auto& e : edges) e = Edge::Canonical(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  return edges;
}

CapacitatedGraph::CapacitatedGraph(int n, EdgeList edges,
                                   std::vector<int> capacities)
    : n_(n) {
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "negative node count");
  if (edges.size() != capacities.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "edge and capacity lists differ in length");
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::kInvalidInput, "edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidInput,
                  "self-loop at node " + std::to_string(e.u));
    }
    e = Edge::Canonical(e.u, e.v);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  edges_.reserve(edges.size());
  capacities_.reserve(edges.size());
  for (std::size_t i : order) {
    if (capacities[i] < 0) {
      throw Error(ErrorCode::kInvalidInput, "negative capacity");
    }
    if (!edges_.empty() && edges_.back() == edges[i]) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate edge (" + std::to_string(edges[i].u) + "," +
                      std::to_string(edges[i].v) + ")");
    }
    edges_.push_back(edges[i]);
    capacities_.push_back(capacities[i]);
  }
  index_.assign(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    index_[edges_[i].u * n + edges_[i].v] = static_cast<int>(i);
    index_[edges_[i].v * n + edges_[i].u] = static_cast<int>(i);
  }
}

CapacitatedGraph CapacitatedGraph::Uniform(int n, EdgeList edges,
                                           int capacity) {
  std::vector<int> caps(edges.size(), capacity);
  return CapacitatedGraph(n, std::move(edges), std::move(caps));
}

CapacitatedGraph CapacitatedGraph::Complete(int n, int capacity) {
  EdgeList edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Uniform(n, std::move(edges), capacity);
}

std::optional<std::size_t> CapacitatedGraph::edge_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
  int idx = index_[a * n_ + b];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

int CapacitatedGraph::capacity(int a, int b) const {
  auto idx = edge_index(a, b);
  if (!idx) throw Error(ErrorCode::kInvalidInput, "not an edge");
  return capacities_[*idx];
}

Cut MakeCut(int n, std::span<const Edge> edges, std::span<const int> side) {
  std::vector<char> in_u(n, 0);
  for (int v : side) {
    if (v < 0 || v >= n) throw Error(ErrorCode::kInvalidInput, "bad node");
    in_u[v] = 1;
  }
  Cut cut;
  for (int v = 0; v < n; ++v) (in_u[v] ? cut.side_u : cut.side_w).push_back(v);
  if (cut.side_u.empty() || cut.side_w.empty()) {
    throw Error(ErrorCode::kInvalidInput, "cut side must be a proper subset");
  }
  for (const Edge& e : edges) {
    if (in_u[e.u] != in_u[e.v]) cut.cutset.push_back(e);
  }
  cut.cutset = CanonicalEdges(cut.cutset);
  return cut;
}

double ZeroEigenvalueThreshold(const Spectrum& spectrum) {
  double top = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.back();
  return 1e-8 * std::max(1.0, top);
}

Eigen::MatrixXd Laplacian(int n, std::span<const Edge> edges) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges) {
    lap(e.u, e.v) -= 1.0;
    lap(e.v, e.u) -= 1.0;
    lap(e.u, e.u) += 1.0;
    lap(e.v, e.v) += 1.0;
  }
  return lap;
}

Eigen::MatrixXd Laplacian(const CapacitatedGraph& g) {
  return Laplacian(g.n(), g.edges());
}

Spectrum ComputeSpectrum(int n, std::span<const Edge> edges) {
  Spectrum s;
  if (n == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      Laplacian(n, edges), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

Spectrum ComputeSpectrum(const CapacitatedGraph& g) {
  return ComputeSpectrum(g.n(), g.edges());
}

ExtendedReal InverseEigenvalueSum(int n, std::span<const Edge> edges) {
  Spectrum s = ComputeSpectrum(n, edges);
  const double zero = ZeroEigenvalueThreshold(s);
  double sum = 0.0;
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] < zero) return ExtendedReal::Infinity();
    sum += 1.0 / s.eigenvalues[i];
  }
  return ExtendedReal(sum);
}

ExtendedReal HStar(int n, std::span<const Edge> edges) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "H* needs n >= 2");
  ExtendedReal sum = InverseEigenvalueSum(n, edges);
  if (sum.is_infinite()) return sum;
  return ExtendedReal(sum.value() / (2.0 * n));
}

ExtendedReal HStar(const CapacitatedGraph& g) { return HStar(g.n(), g.edges()); }

namespace {

std::vector<std::vector<int>> Adjacency(int n, std::span<const Edge> edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

std::vector<int> BfsFrom(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

}  // namespace

bool IsConnected(int n, std::span<const Edge> edges) {
  if (n <= 1) return true;
  auto dist = BfsFrom(Adjacency(n, edges), 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool IsConnected(const CapacitatedGraph& g) { return IsConnected(g.n(), g.edges()); }

bool IsSpanningTree(const SpanningTree& t) {
  if (t.n < 1) return false;
  if (static_cast<int>(t.edges.size()) != t.n - 1) return false;
  for (const Edge& e : t.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= t.n || e.v >= t.n || e.u == e.v) {
      return false;
    }
  }
  // n-1 edges and connected implies acyclic.
  return IsConnected(t.n, t.edges);
}

std::int64_t WienerIndex(const SpanningTree& t) {
  if (!IsSpanningTree(t)) {
    throw Error(ErrorCode::kInvalidInput, "not a spanning tree");
  }
  // Each edge contributes |side| * (n - |side|).
  auto adj = Adjacency(t.n, t.edges);
  std::vector<int> parent(t.n, -1), order;
  order.reserve(t.n);
  std::vector<char> seen(t.n, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int y : adj[order[i]]) {
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[i];
        order.push_back(y);
      }
    }
  }
  std::vector<std::int64_t> size(t.n, 1);
  std::int64_t total = 0;
  for (std::size_t i = order.size(); i-- > 1;) {
    int x = order[i];
    total += size[x] * (t.n - size[x]);
    size[parent[x]] += size[x];
  }
  return total;
}

double AverageDistance(const SpanningTree& t) {
  std::int64_t w = WienerIndex(t);
  if (t.n < 2) return 0.0;
  return static_cast<double>(w) /
         (static_cast<double>(t.n) * (t.n - 1) / 2.0);
}

double TreeHStar(const SpanningTree& t) {
  return AverageDistance(t) * (t.n - 1) / (4.0 * t.n);
}

std::int64_t MinCutCapacity(const CapacitatedGraph& g) {
  const int n = g.n();
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "min cut needs n >= 2");
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    w[e.u][e.v] += g.capacities()[i];
    w[e.v][e.u] += g.capacities()[i];
  }
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  // Stoer-Wagner: repeated maximum adjacency orderings, merging the last two.
  while (active.size() > 1) {
    const std::size_t m = active.size();
    std::vector<std::int64_t> key(m, 0);
    std::vector<char> added(m, 0);
    int prev = -1, last = -1;
    for (std::size_t step = 0; step < m; ++step) {
      int pick = -1;
      for (std::size_t i = 0; i < m; ++i) {
        if (!added[i] && (pick < 0 || key[i] > key[pick])) pick = static_cast<int>(i);
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 == m) best = std::min(best, key[pick]);
      for (std::size_t i = 0; i < m; ++i) {
        if (!added[i]) key[i] += w[active[pick]][active[i]];
      }
    }
    const int s = active[prev], t = active[last];
    for (int x : active) {
      w[s][x] += w[t][x];
      w[x][s] = w[s][x];
    }
    w[s][s] = 0;
    active.erase(active.begin() + last);
  }
  return best;
}

std::int64_t TotalCapacity(const CapacitatedGraph& g) {
  return std::accumulate(g.capacities().begin(), g.capacities().end(),
                         std::int64_t{0});
}

std::vector<std::vector<int>> HopDistances(int n, std::span<const Edge> edges) {
  auto adj = Adjacency(n, edges);
  std::vector<std::vector<int>> d(n);
  for (int s = 0; s < n; ++s) d[s] = BfsFrom(adj, s);
  return d;
}

}  // namespace robcons
