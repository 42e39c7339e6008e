#include "robcons/circulant.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

ClassedGraph CirculantGraph::classed() const {
  return ClassedGraph{graph.n(), graph.edges(), edge_class,
                      static_cast<int>(generators.size())};
}

bool IsSelfInverse(int n, int generator) { return 2 * generator == n; }

namespace {

void ValidateGenerators(int n, const std::vector<int>& generators) {
  if (n < 3) throw Error(ErrorCode::kInvalidInput, "circulant needs n >= 3");
  if (generators.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty connection set");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const int s = generators[i];
    if (s < 1 || 2 * s > n) {
      throw Error(ErrorCode::kInvalidInput,
                  "generator " + std::to_string(s) + " outside [1, n/2]");
    }
    if (i > 0 && generators[i - 1] >= s) {
      throw Error(ErrorCode::kInvalidInput,
                  "generators must be strictly increasing");
    }
  }
  int g = n;
  for (int s : generators) g = std::gcd(g, s);
  if (g != 1) {
    throw Error(ErrorCode::kNotConnected,
                "connection set does not generate Z_" + std::to_string(n));
  }
}

}  // namespace

void ValidateSpec(const CirculantSpec& spec) {
  ValidateGenerators(spec.n, spec.generators);
  if (spec.alpha < 1) throw Error(ErrorCode::kInvalidInput, "alpha must be >= 1");
  if (spec.h.size() != spec.generators.size()) {
    throw Error(ErrorCode::kInvalidProfile, "h needs one entry per generator");
  }
  int sum = 0;
  bool has_generator_class = false;
  for (std::size_t l = 0; l < spec.h.size(); ++l) {
    if (spec.h[l] < 0) throw Error(ErrorCode::kInvalidProfile, "negative h");
    sum += spec.h[l];
    if (spec.h[l] >= 1 && std::gcd(spec.generators[l], spec.n) == 1) {
      has_generator_class = true;
    }
  }
  if (sum != spec.n - 1) {
    throw Error(ErrorCode::kInvalidProfile,
                "h sums to " + std::to_string(sum) + ", expected n-1 = " +
                    std::to_string(spec.n - 1));
  }
  if (!has_generator_class) {
    throw Error(ErrorCode::kInvalidProfile,
                "no class with h >= 1 generates Z_n on its own");
  }
}

CirculantGraph BuildCirculantGraph(int n, const std::vector<int>& generators) {
  ValidateGenerators(n, generators);
  EdgeList edges;
  std::vector<int> classes;
  for (std::size_t l = 0; l < generators.size(); ++l) {
    const int s = generators[l];
    const int count = IsSelfInverse(n, s) ? n / 2 : n;
    for (int x = 0; x < count; ++x) {
      edges.push_back(Edge::Canonical(x, (x + s) % n));
      classes.push_back(static_cast<int>(l));
    }
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  CirculantGraph out;
  EdgeList sorted;
  for (std::size_t i : order) {
    sorted.push_back(edges[i]);
    out.edge_class.push_back(classes[i]);
  }
  out.graph = CapacitatedGraph::Uniform(n, std::move(sorted), 1);
  out.generators = generators;
  return out;
}

CirculantGraph BuildCirculant(const CirculantSpec& spec) {
  ValidateSpec(spec);
  CirculantGraph c = BuildCirculantGraph(spec.n, spec.generators);
  std::vector<int> caps;
  caps.reserve(c.edge_class.size());
  for (int l : c.edge_class) caps.push_back(spec.h[l] * spec.alpha);
  c.graph = CapacitatedGraph(spec.n, c.graph.edges(), std::move(caps));
  return c;
}

ClassTag EdgeClass(int n, const std::vector<int>& generators, int u, int v) {
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw Error(ErrorCode::kInvalidInput, "node out of range");
  }
  const int diff = ((v - u) % n + n) % n;
  for (std::size_t l = 0; l < generators.size(); ++l) {
    const int s = generators[l];
    if (diff == s || diff == n - s) return ClassTag{static_cast<int>(l), s};
  }
  throw Error(ErrorCode::kInvalidInput,
              "(" + std::to_string(u) + "," + std::to_string(v) +
                  ") is not an edge of the circulant graph");
}

SpanningTree RotateTree(const SpanningTree& tree, int delta, int n) {
  auto shift = [&](int x) { return ((x + delta) % n + n) % n; };
  SpanningTree out;
  out.n = tree.n;
  out.root = shift(tree.root);
  out.edges.reserve(tree.edges.size());
  for (const Edge& e : tree.edges) {
    out.edges.push_back(Edge::Canonical(shift(e.u), shift(e.v)));
  }
  out.edges = CanonicalEdges(std::move(out.edges));
  return out;
}

TreeSearchResult FindCmad(const CirculantSpec& spec,
                          const TreeSearchOptions& options) {
  ValidateSpec(spec);
  CirculantGraph c = BuildCirculantGraph(spec.n, spec.generators);
  return MinAverageDistanceTree(c.classed(), spec.h, options);
}

TreeSearchResult FindMad(int n, const std::vector<int>& generators,
                         const TreeSearchOptions& options) {
  CirculantGraph c = BuildCirculantGraph(n, generators);
  return MinAverageDistanceTree(c.classed(), std::nullopt, options);
}

DesignSolution Algorithm1(const CirculantSpec& spec,
                          const Algorithm1Options& options) {
  CirculantGraph c = BuildCirculant(spec);
  const int m = static_cast<int>(spec.generators.size());
  if (options.capacity_override) {
    if (static_cast<int>(options.capacity_override->size()) != m) {
      throw Error(ErrorCode::kInvalidInput,
                  "capacity override needs one entry per class");
    }
    std::vector<int> caps;
    for (int l : c.edge_class) caps.push_back((*options.capacity_override)[l]);
    c.graph = CapacitatedGraph(spec.n, c.graph.edges(), std::move(caps));
  }
  TreeSearchResult cmad =
      MinAverageDistanceTree(c.classed(), spec.h, options.search);
  std::vector<EdgeList> subgraphs;
  subgraphs.reserve(static_cast<std::size_t>(spec.alpha) * spec.n);
  for (int j = 0; j < spec.n; ++j) {
    SpanningTree rotated = RotateTree(cmad.tree, j, spec.n);
    for (int copy = 0; copy < spec.alpha; ++copy) subgraphs.push_back(rotated.edges);
  }
  std::vector<int> usage(c.graph.num_edges(), 0);
  for (const EdgeList& sg : subgraphs)
    for (const Edge& e : sg) ++usage[*c.graph.edge_index(e.u, e.v)];
  for (std::size_t i = 0; i < usage.size(); ++i) {
    if (usage[i] <= c.graph.capacities()[i]) continue;
    const int l = c.edge_class[i];
    const Edge& e = c.graph.edges()[i];
    const std::string where = "edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ") of class " +
                              std::to_string(spec.generators[l]) + " used " +
                              std::to_string(usage[i]) + " times, capacity " +
                              std::to_string(c.graph.capacities()[i]);
    if (IsSelfInverse(spec.n, spec.generators[l])) {
      throw Error(ErrorCode::kSelfInverseCapacityViolation,
                  where + "; self-inverse classes double the rotation count");
    }
    throw Error(ErrorCode::kCapacityExceeded, where);
  }
  std::map<std::string, bool> flags{{"heuristic", cmad.heuristic}};
  return MakeSolution(std::move(c.graph), std::move(subgraphs), std::move(flags));
}

}  // namespace robcons
