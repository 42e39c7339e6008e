#include "robcons/tree_search.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

double TreeSearchResult::average_distance() const {
  if (tree.n < 2) return 0.0;
  return static_cast<double>(wiener) / (tree.n * (tree.n - 1) / 2.0);
}

double TreeSearchResult::hstar() const {
  return static_cast<double>(wiener) / (2.0 * tree.n * tree.n);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

void ValidateClassedGraph(const ClassedGraph& g) {
  if (g.edges.size() != g.edge_class.size()) {
    throw Error(ErrorCode::kInvalidInput, "edge class labels missing");
  }
  for (int c : g.edge_class) {
    if (c < 0 || c >= g.num_classes) {
      throw Error(ErrorCode::kInvalidInput, "edge class out of range");
    }
  }
}

// Wiener index of the tree given by graph edge indices, O(n). Scratch buffers
// are reused across calls.
class WienerEvaluator {
 public:
  explicit WienerEvaluator(int n) : n_(n), head_(n), next_(2 * n), to_(2 * n),
                                    order_(n), parent_(n), size_(n) {}

  std::int64_t operator()(const EdgeList& edges, std::span<const int> tree) {
    std::fill(head_.begin(), head_.end(), -1);
    int slot = 0;
    for (int id : tree) {
      const Edge& e = edges[id];
      to_[slot] = e.v; next_[slot] = head_[e.u]; head_[e.u] = slot++;
      to_[slot] = e.u; next_[slot] = head_[e.v]; head_[e.v] = slot++;
    }
    std::fill(parent_.begin(), parent_.end(), -2);
    int count = 0;
    order_[count++] = 0;
    parent_[0] = -1;
    for (int i = 0; i < count; ++i) {
      int x = order_[i];
      for (int s = head_[x]; s >= 0; s = next_[s]) {
        if (parent_[to_[s]] == -2) {
          parent_[to_[s]] = x;
          order_[count++] = to_[s];
        }
      }
    }
    if (count != n_) return std::numeric_limits<std::int64_t>::max();
    std::fill(size_.begin(), size_.end(), 1);
    std::int64_t total = 0;
    for (int i = n_ - 1; i > 0; --i) {
      int x = order_[i];
      total += static_cast<std::int64_t>(size_[x]) * (n_ - size_[x]);
      size_[parent_[x]] += size_[x];
    }
    return total;
  }

 private:
  int n_;
  std::vector<int> head_, next_, to_, order_, parent_, size_;
};

// Exact minimum-Wiener spanning tree by dynamic programming over node
// subsets. A rooted tree on subset X with root v splits into the subtree Y
// that holds the lowest node of X \ {v} (hung from v through an edge (v, c))
// and the remaining tree on X \ Y, still rooted at v. Each tree edge whose
// lower side has s nodes contributes s * (n - s), so subtree costs are
// independent of the rest of the tree.
//
// Class counts are tracked as a mixed-radix index over all classes but one
// ("dropped"); the dropped count follows from the subset size.
class ExactTreeSearch {
 public:
  using Cost = std::int32_t;
  static constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  ExactTreeSearch(const ClassedGraph& g, const std::vector<int>& profile)
      : g_(g), n_(g.n), profile_(profile) {
    cls_.assign(n_ * n_, -1);
    nbr_.assign(n_, 0);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const Edge& e = g.edges[i];
      cls_[e.u * n_ + e.v] = cls_[e.v * n_ + e.u] = g.edge_class[i];
      nbr_[e.u] |= 1u << e.v;
      nbr_[e.v] |= 1u << e.u;
    }
    const int m = static_cast<int>(profile_.size());
    dropped_ = static_cast<int>(
        std::max_element(profile_.begin(), profile_.end()) - profile_.begin());
    stride_.assign(m, 0);
    K_ = 1;
    for (int c = 0; c < m; ++c) {
      if (c == dropped_) continue;
      stride_[c] = K_;
      K_ *= profile_[c] + 1;
    }
  }

  std::size_t TableBytes() const {
    return (std::size_t{1} << n_) * n_ * K_ * sizeof(Cost);
  }

  // Returns tree edges, or nullopt when no tree matches the profile.
  std::optional<EdgeList> Solve(std::int64_t* wiener) {
    BuildIndexTables();
    BuildConnectivity();
    table_.assign((std::size_t{1} << n_) * n_ * K_, kInf);
    const std::uint32_t full = (n_ == 32) ? ~0u : ((1u << n_) - 1);
    std::vector<Cost> hang(K_);
    std::vector<int> hang_live, rest_live;
    for (std::uint32_t x = 1; x <= full; ++x) {
      if (!conn_[x]) continue;
      const int size = std::popcount(x);
      for (std::uint32_t vs = x; vs; vs &= vs - 1) {
        const int v = std::countr_zero(vs);
        Cost* out = At(x, v);
        if (size == 1) {
          out[0] = 0;
          continue;
        }
        const std::uint32_t rest = x & ~(1u << v);
        const std::uint32_t low = rest & (~rest + 1);
        const std::uint32_t others = rest ^ low;
        std::uint32_t sub = others;
        while (true) {
          const std::uint32_t y = sub | low;
          const std::uint32_t z = x ^ y;
          if (conn_[y] && conn_[z] && (nbr_[v] & y)) {
            if (HangVector(y, v, hang)) {
              const Cost* r = At(z, v);
              rest_live.clear();
              for (int b = 0; b < K_; ++b)
                if (r[b] < kInf) rest_live.push_back(b);
              if (!rest_live.empty()) {
                hang_live.clear();
                for (int a = 0; a < K_; ++a)
                  if (hang[a] < kInf) hang_live.push_back(a);
                for (int a : hang_live) {
                  const std::int16_t* row = &add_[a * K_];
                  for (int b : rest_live) {
                    const int idx = row[b];
                    if (idx < 0) continue;
                    const Cost c = hang[a] + r[b];
                    if (c < out[idx]) out[idx] = c;
                  }
                }
              }
            }
          }
          if (sub == 0) break;
          sub = (sub - 1) & others;
        }
        for (int idx = 0; idx < K_; ++idx) {
          const int dropped_count = size - 1 - others_sum_[idx];
          if (dropped_count < 0 || dropped_count > profile_[dropped_]) {
            out[idx] = kInf;
          }
        }
      }
    }
    const int target = TargetIndex();
    const Cost best = At(full, 0)[target];
    if (best >= kInf) return std::nullopt;
    *wiener = best;
    EdgeList edges;
    Rebuild(full, 0, target, best, edges);
    return CanonicalEdges(std::move(edges));
  }

 private:
  Cost* At(std::uint32_t x, int v) {
    return &table_[(static_cast<std::size_t>(x) * n_ + v) * K_];
  }

  int Class(int a, int b) const { return cls_[a * n_ + b]; }

  void BuildIndexTables() {
    const int m = static_cast<int>(profile_.size());
    // Decode each index into per-class counts.
    std::vector<std::vector<int>> counts(K_, std::vector<int>(m, 0));
    others_sum_.assign(K_, 0);
    for (int idx = 0; idx < K_; ++idx) {
      int rem = idx;
      for (int c = m - 1; c >= 0; --c) {
        if (c == dropped_) continue;
        counts[idx][c] = rem / stride_[c];
        rem %= stride_[c];
      }
      for (int c = 0; c < m; ++c)
        if (c != dropped_) others_sum_[idx] += counts[idx][c];
    }
    auto encode = [&](const std::vector<int>& cnt) {
      int idx = 0;
      for (int c = 0; c < m; ++c) {
        if (c == dropped_) continue;
        if (cnt[c] > profile_[c]) return -1;
        idx += cnt[c] * stride_[c];
      }
      return idx;
    };
    add_.assign(static_cast<std::size_t>(K_) * K_, -1);
    for (int a = 0; a < K_; ++a) {
      for (int b = 0; b < K_; ++b) {
        std::vector<int> sum(m, 0);
        for (int c = 0; c < m; ++c) sum[c] = counts[a][c] + counts[b][c];
        add_[a * K_ + b] = static_cast<std::int16_t>(encode(sum));
      }
    }
    shift_.assign(m, std::vector<int>(K_, -1));
    for (int c = 0; c < m; ++c) {
      for (int a = 0; a < K_; ++a) {
        std::vector<int> cnt = counts[a];
        if (c != dropped_) ++cnt[c];
        shift_[c][a] = encode(cnt);
      }
    }
  }

  int TargetIndex() const {
    int idx = 0;
    for (std::size_t c = 0; c < profile_.size(); ++c) {
      if (static_cast<int>(c) != dropped_) idx += profile_[c] * stride_[c];
    }
    return idx;
  }

  void BuildConnectivity() {
    conn_.assign(std::size_t{1} << n_, 0);
    for (std::uint32_t x = 1; x < (1u << n_); ++x) {
      std::uint32_t reach = x & (~x + 1);
      while (true) {
        std::uint32_t grow = reach;
        for (std::uint32_t b = reach; b; b &= b - 1) {
          grow |= nbr_[std::countr_zero(b)] & x;
        }
        if (grow == reach) break;
        reach = grow;
      }
      conn_[x] = (reach == x);
    }
  }

  // Best costs of trees on y hung from v, indexed by class counts including
  // the hanging edge. Returns false when nothing is finite.
  bool HangVector(std::uint32_t y, int v, std::vector<Cost>& hang) {
    std::fill(hang.begin(), hang.end(), kInf);
    const int ys = std::popcount(y);
    const Cost w = ys * (n_ - ys);
    bool any = false;
    for (std::uint32_t cs = y & nbr_[v]; cs; cs &= cs - 1) {
      const int c = std::countr_zero(cs);
      const Cost* sub = At(y, c);
      const std::vector<int>& shift = shift_[Class(v, c)];
      for (int a = 0; a < K_; ++a) {
        if (sub[a] >= kInf) continue;
        const int s = shift[a];
        if (s < 0) continue;
        const Cost cost = sub[a] + w;
        if (cost < hang[s]) {
          hang[s] = cost;
          any = true;
        }
      }
    }
    return any;
  }

  // Recovers one tree achieving `cost` for state (x, v, idx), scanning in the
  // same order as the forward pass.
  void Rebuild(std::uint32_t x, int v, int idx, Cost cost, EdgeList& out) {
    if (std::popcount(x) == 1) return;
    const std::uint32_t rest = x & ~(1u << v);
    const std::uint32_t low = rest & (~rest + 1);
    const std::uint32_t others = rest ^ low;
    std::uint32_t sub = others;
    while (true) {
      const std::uint32_t y = sub | low;
      const std::uint32_t z = x ^ y;
      if (conn_[y] && conn_[z] && (nbr_[v] & y)) {
        const int ys = std::popcount(y);
        const Cost w = ys * (n_ - ys);
        Cost* r = At(z, v);
        for (std::uint32_t cs = y & nbr_[v]; cs; cs &= cs - 1) {
          const int c = std::countr_zero(cs);
          Cost* subtree = At(y, c);
          const std::vector<int>& shift = shift_[Class(v, c)];
          for (int a0 = 0; a0 < K_; ++a0) {
            if (subtree[a0] >= kInf || shift[a0] < 0) continue;
            const int a = shift[a0];
            for (int b = 0; b < K_; ++b) {
              if (r[b] >= kInf || add_[a * K_ + b] != idx) continue;
              if (subtree[a0] + w + r[b] != cost) continue;
              out.push_back(Edge::Canonical(v, c));
              Rebuild(y, c, a0, subtree[a0], out);
              Rebuild(z, v, b, r[b], out);
              return;
            }
          }
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
    throw Error(ErrorCode::kInvalidState, "tree reconstruction failed");
  }

  const ClassedGraph& g_;
  int n_;
  std::vector<int> profile_;
  std::vector<int> cls_;
  std::vector<std::uint32_t> nbr_;
  int dropped_ = 0;
  std::vector<int> stride_;
  int K_ = 1;
  std::vector<int> others_sum_;
  std::vector<std::int16_t> add_;
  std::vector<std::vector<int>> shift_;
  std::vector<char> conn_;
  std::vector<Cost> table_;
};

// Iterated local search over spanning trees using edge exchanges. With a
// profile, exchanges keep the removed and added edge in the same class.
class LocalTreeSearch {
 public:
  LocalTreeSearch(const ClassedGraph& g, bool keep_classes)
      : g_(g), n_(g.n), keep_classes_(keep_classes), eval_(g.n) {
    adj_.resize(n_);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      adj_[g.edges[i].u].push_back(static_cast<int>(i));
      adj_[g.edges[i].v].push_back(static_cast<int>(i));
    }
  }

  std::int64_t Wiener(const std::vector<int>& tree) {
    return eval_(g_.edges, tree);
  }

  // Best-improvement descent until no exchange lowers the Wiener index.
  std::int64_t Descend(std::vector<int>& tree, bool free_classes = false) {
    const bool saved = keep_classes_;
    if (free_classes) keep_classes_ = false;
    std::int64_t current = Wiener(tree);
    while (true) {
      std::int64_t best = current;
      int best_out = -1, best_in = -1;
      ForEachExchange(tree, [&](int pos, int in) {
        const int saved = tree[pos];
        tree[pos] = in;
        const std::int64_t w = Wiener(tree);
        tree[pos] = saved;
        if (w < best) {
          best = w;
          best_out = pos;
          best_in = in;
        }
      });
      if (best_out < 0) {
        keep_classes_ = saved;
        return current;
      }
      tree[best_out] = best_in;
      current = best;
    }
  }

  // Number of tree edges above the per-class target.
  int Excess(const std::vector<int>& tree, std::span<const int> profile) const {
    std::vector<int> count(profile.size(), 0);
    for (int id : tree) ++count[g_.edge_class[id]];
    int excess = 0;
    for (std::size_t c = 0; c < profile.size(); ++c)
      excess += std::max(0, count[c] - profile[c]);
    return excess;
  }

  // Greedily restores the class profile: each step takes the exchange that
  // minimizes (excess, Wiener index), across classes.
  bool Repair(std::vector<int>& tree, std::span<const int> profile) {
    const bool saved = keep_classes_;
    keep_classes_ = false;
    int excess = Excess(tree, profile);
    while (excess > 0) {
      int best_excess = excess;
      std::int64_t best_w = std::numeric_limits<std::int64_t>::max();
      int best_out = -1, best_in = -1;
      ForEachExchange(tree, [&](int pos, int in) {
        if (g_.edge_class[in] == g_.edge_class[tree[pos]]) return;
        const int saved_id = tree[pos];
        tree[pos] = in;
        const int e = Excess(tree, profile);
        if (e < best_excess || (e == best_excess && e < excess)) {
          const std::int64_t w = Wiener(tree);
          if (e < best_excess || w < best_w) {
            best_excess = e;
            best_w = w;
            best_out = pos;
            best_in = in;
          }
        }
        tree[pos] = saved_id;
      });
      if (best_out < 0) break;
      tree[best_out] = best_in;
      excess = best_excess;
    }
    keep_classes_ = saved;
    return excess == 0;
  }

  // Random exchanges; with `free_classes` they may change the class profile.
  void Perturb(std::vector<int>& tree, std::mt19937_64& rng, int moves,
               bool free_classes = false) {
    const bool saved = keep_classes_;
    if (free_classes) keep_classes_ = false;
    for (int k = 0; k < moves; ++k) {
      std::vector<std::pair<int, int>> options;
      ForEachExchange(tree, [&](int pos, int in) { options.emplace_back(pos, in); });
      if (options.empty()) return;
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      auto [pos, in] = options[pick(rng)];
      tree[pos] = in;
    }
    keep_classes_ = saved;
  }

  // Random BFS tree from a random root, as graph edge indices.
  std::vector<int> RandomBfsOrder(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> root_dist(0, n_ - 1);
    const int root = root_dist(rng);
    std::vector<int> seen(n_, 0), frontier{root}, order;
    seen[root] = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      std::shuffle(frontier.begin(), frontier.end(), rng);
      for (int x : frontier) {
        std::vector<int> inc = adj_[x];
        std::shuffle(inc.begin(), inc.end(), rng);
        for (int id : inc) {
          const Edge& e = g_.edges[id];
          const int y = e.u == x ? e.v : e.u;
          if (!seen[y]) {
            seen[y] = 1;
            order.push_back(id);
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    return order;
  }

 private:
  template <typename Fn>
  void ForEachExchange(const std::vector<int>& tree, Fn&& fn) {
    // Component of tree.u after removing each tree edge.
    std::vector<std::vector<int>> tree_adj(n_);
    for (std::size_t p = 0; p < tree.size(); ++p) {
      const Edge& e = g_.edges[tree[p]];
      tree_adj[e.u].push_back(static_cast<int>(p));
      tree_adj[e.v].push_back(static_cast<int>(p));
    }
    std::vector<char> in_tree(g_.edges.size(), 0);
    for (int id : tree) in_tree[id] = 1;
    std::vector<char> side(n_);
    std::vector<int> stack;
    for (std::size_t p = 0; p < tree.size(); ++p) {
      std::fill(side.begin(), side.end(), 0);
      const Edge& cut = g_.edges[tree[p]];
      stack.assign(1, cut.u);
      side[cut.u] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int q : tree_adj[x]) {
          if (q == static_cast<int>(p)) continue;
          const Edge& e = g_.edges[tree[q]];
          const int y = e.u == x ? e.v : e.u;
          if (!side[y]) {
            side[y] = 1;
            stack.push_back(y);
          }
        }
      }
      for (std::size_t id = 0; id < g_.edges.size(); ++id) {
        if (in_tree[id]) continue;
        const Edge& e = g_.edges[id];
        if (side[e.u] == side[e.v]) continue;
        if (keep_classes_ && g_.edge_class[id] != g_.edge_class[tree[p]]) continue;
        fn(static_cast<int>(p), static_cast<int>(id));
      }
    }
  }

  const ClassedGraph& g_;
  int n_;
  bool keep_classes_;
  WienerEvaluator eval_;
  std::vector<std::vector<int>> adj_;
};

EdgeList EdgesOf(const ClassedGraph& g, const std::vector<int>& ids) {
  EdgeList out;
  for (int id : ids) out.push_back(g.edges[id]);
  return CanonicalEdges(std::move(out));
}

TreeSearchResult MakeResult(const ClassedGraph& g, EdgeList edges,
                            std::int64_t wiener, bool heuristic) {
  TreeSearchResult r;
  r.tree = SpanningTree{g.n, std::move(edges), 0};
  r.wiener = wiener;
  r.heuristic = heuristic;
  r.class_counts.assign(g.num_classes, 0);
  for (const Edge& e : r.tree.edges) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    ++r.class_counts[g.edge_class[it - g.edges.begin()]];
  }
  return r;
}

TreeSearchResult LocalSearch(const ClassedGraph& g,
                             const std::optional<std::vector<int>>& profile,
                             const TreeSearchOptions& options) {
  LocalTreeSearch search(g, profile.has_value());
  std::vector<int> best_tree;
  std::int64_t best_w = std::numeric_limits<std::int64_t>::max();
  EdgeList best_edges;
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::vector<int> order = search.RandomBfsOrder(rng);
    std::vector<int> tree;
    if (profile) {
      // Start from a locally optimal unconstrained tree and repair its
      // profile; fall back to matroid intersection when repair stalls.
      tree = order;
      search.Descend(tree, /*free_classes=*/true);
      if (!search.Repair(tree, *profile)) {
        std::vector<int> rest(g.edges.size());
        std::iota(rest.begin(), rest.end(), 0);
        std::shuffle(rest.begin(), rest.end(), rng);
        order.insert(order.end(), rest.begin(), rest.end());
        auto t = TreeWithProfile(g, *profile, order);
        if (!t) throw Error(ErrorCode::kInfeasibleProfile, "no tree with profile");
        tree = *t;
      }
    } else {
      tree = order;
    }
    std::int64_t current_w = search.Descend(tree);
    std::vector<int> current = tree;
    std::uniform_int_distribution<int> kick(1, 3);
    for (int it = 0; it < options.iterations; ++it) {
      std::vector<int> candidate = current;
      // With a profile, alternate class-preserving kicks with kicks that
      // move edges between classes and are then repaired.
      const bool cross = profile && (it % 2 == 1);
      search.Perturb(candidate, rng, kick(rng), cross);
      if (cross && !search.Repair(candidate, *profile)) continue;
      const std::int64_t w = search.Descend(candidate);
      if (w <= current_w) {
        current = std::move(candidate);
        current_w = w;
      }
      if (current_w < best_w ||
          (current_w == best_w && EdgesOf(g, current) < best_edges)) {
        best_w = current_w;
        best_edges = EdgesOf(g, current);
      }
    }
    if (current_w < best_w ||
        (current_w == best_w && EdgesOf(g, current) < best_edges)) {
      best_w = current_w;
      best_edges = EdgesOf(g, current);
    }
  }
  return MakeResult(g, std::move(best_edges), best_w, true);
}

}  // namespace

std::optional<std::vector<int>> TreeWithProfile(
    const ClassedGraph& g, std::span<const int> profile,
    std::span<const int> preference) {
  ValidateClassedGraph(g);
  const int n = g.n;
  const int num_edges = static_cast<int>(g.edges.size());
  if (static_cast<int>(profile.size()) != g.num_classes) {
    throw Error(ErrorCode::kInvalidProfile, "profile length != class count");
  }
  if (std::accumulate(profile.begin(), profile.end(), 0) != n - 1) {
    return std::nullopt;
  }
  std::vector<char> in(num_edges, 0);
  std::vector<int> count(g.num_classes, 0);
  int size = 0;
  {
    DisjointSets ds(n);
    auto try_add = [&](int id) {
      const int c = g.edge_class[id];
      if (in[id] || count[c] >= profile[c]) return;
      if (!ds.Union(g.edges[id].u, g.edges[id].v)) return;
      in[id] = 1;
      ++count[c];
      ++size;
    };
    for (int id : preference) try_add(id);
    for (int id = 0; id < num_edges; ++id) try_add(id);
  }
  // Augment along shortest paths in the exchange graph.
  while (size < n - 1) {
    std::vector<std::vector<int>> fadj(n);
    DisjointSets ds(n);
    for (int id = 0; id < num_edges; ++id) {
      if (!in[id]) continue;
      fadj[g.edges[id].u].push_back(id);
      fadj[g.edges[id].v].push_back(id);
      ds.Union(g.edges[id].u, g.edges[id].v);
    }
    // For y outside the forest with both ends in one component: edges of the
    // forest path between its endpoints (exchangeable in the graphic matroid).
    auto forest_path = [&](int y) {
      std::vector<int> via(n, -2);
      std::vector<int> stack{g.edges[y].u};
      via[g.edges[y].u] = -1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int id : fadj[x]) {
          const int z = g.edges[id].u == x ? g.edges[id].v : g.edges[id].u;
          if (via[z] == -2) {
            via[z] = id;
            stack.push_back(z);
          }
        }
      }
      std::vector<int> path;
      for (int x = g.edges[y].v; via[x] >= 0;) {
        const int id = via[x];
        path.push_back(id);
        x = g.edges[id].u == x ? g.edges[id].v : g.edges[id].u;
      }
      return path;
    };
    std::vector<char> source(num_edges, 0), sink(num_edges, 0);
    std::vector<std::vector<int>> out_arcs(num_edges);
    for (int y = 0; y < num_edges; ++y) {
      if (in[y]) continue;
      const int cy = g.edge_class[y];
      const bool joins = ds.Find(g.edges[y].u) != ds.Find(g.edges[y].v);
      source[y] = joins;
      sink[y] = count[cy] < profile[cy];
      if (!joins) {
        for (int x : forest_path(y)) out_arcs[x].push_back(y);  // I - x + y in M1
      }
      for (int x = 0; x < num_edges; ++x) {
        if (in[x] && (g.edge_class[x] == cy || count[cy] < profile[cy])) {
          out_arcs[y].push_back(x);  // I - x + y in M2
        }
      }
    }
    std::vector<int> prev(num_edges, -2);
    std::queue<int> q;
    for (int y = 0; y < num_edges; ++y) {
      if (source[y]) {
        prev[y] = -1;
        q.push(y);
      }
    }
    int end = -1;
    while (!q.empty() && end < 0) {
      int a = q.front();
      q.pop();
      if (!in[a] && sink[a]) {
        end = a;
        break;
      }
      for (int b : out_arcs[a]) {
        if (prev[b] == -2) {
          prev[b] = a;
          q.push(b);
        }
      }
    }
    if (end < 0) return std::nullopt;
    for (int a = end; a >= 0; a = prev[a]) {
      in[a] = !in[a];
      count[g.edge_class[a]] += in[a] ? 1 : -1;
    }
    ++size;
  }
  std::vector<int> ids;
  for (int id = 0; id < num_edges; ++id)
    if (in[id]) ids.push_back(id);
  return ids;
}

TreeSearchResult MinAverageDistanceTree(
    const ClassedGraph& g, const std::optional<std::vector<int>>& profile,
    const TreeSearchOptions& options) {
  ValidateClassedGraph(g);
  if (g.n < 1) throw Error(ErrorCode::kInvalidInput, "empty graph");
  if (!IsConnected(g.n, g.edges)) {
    throw Error(ErrorCode::kNotConnected, "graph is not connected");
  }
  if (g.n == 1) return MakeResult(g, {}, 0, false);
  if (profile) {
    if (static_cast<int>(profile->size()) != g.num_classes) {
      throw Error(ErrorCode::kInvalidProfile, "profile length != class count");
    }
    if (!TreeWithProfile(g, *profile)) {
      throw Error(ErrorCode::kInfeasibleProfile,
                  "no spanning tree has the requested class profile");
    }
  }
  if (g.n <= std::min(options.exact_threshold, 31)) {
    // Without a profile every edge is one class and the profile is (n-1).
    ClassedGraph single = g;
    std::vector<int> prof = profile.value_or(std::vector<int>{g.n - 1});
    if (!profile) {
      single.edge_class.assign(g.edges.size(), 0);
      single.num_classes = 1;
    }
    ExactTreeSearch exact(single, prof);
    if (exact.TableBytes() <= options.exact_memory_limit) {
      std::int64_t wiener = 0;
      auto edges = exact.Solve(&wiener);
      if (!edges) {
        throw Error(ErrorCode::kInfeasibleProfile,
                    "no spanning tree has the requested class profile");
      }
      return MakeResult(g, std::move(*edges), wiener, false);
    }
  }
  return LocalSearch(g, profile, options);
}

}  // namespace robcons
