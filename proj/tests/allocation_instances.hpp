#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "robcons/allocation.hpp"

namespace fixtures {

using namespace robcons;

struct Instance {
  CapacitatedGraph g;
  int k;
  std::vector<EdgeList> initial;
};

// Random connected base graph, random spanning trees per dimension as the
// initial solution, spare capacity on some edges.
Instance RandomInstance(std::mt19937_64& rng, std::size_t max_candidates) {
  while (true) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 2);
    const EdgeList edges = oracle::RandomGraph(n, 0.7, rng);
    if (!IsConnected(n, edges)) continue;
    std::vector<EdgeList> initial;
    std::vector<int> used(edges.size(), 0);
    for (int l = 0; l < k; ++l) {
      // Random spanning tree of the base graph by random edge order.
      std::vector<std::size_t> order(edges.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<int> comp(n);
      std::iota(comp.begin(), comp.end(), 0);
      EdgeList tree;
      for (std::size_t i : order) {
        const Edge& e = edges[i];
        if (comp[e.u] == comp[e.v]) continue;
        const int from = comp[e.v];
        for (int& c : comp)
          if (c == from) c = comp[e.u];
        tree.push_back(e);
        ++used[i];
      }
      initial.push_back(tree);
    }
    std::vector<int> caps;
    for (std::size_t i = 0; i < edges.size(); ++i)
      caps.push_back(used[i] + static_cast<int>(rng() % 2));
    CapacitatedGraph g(n, edges, caps);
    AllocationState probe(g, k, initial);
    std::size_t candidates = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (probe.remaining()[i] <= 0) continue;
      for (int l = 0; l < k; ++l) candidates += probe.contains({edges[i], l}) ? 0 : 1;
    }
    if (candidates == 0 || candidates > max_candidates) continue;
    return {g, k, initial};
  }
}

}  // namespace fixtures
