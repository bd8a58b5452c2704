#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// A rainbow spanning tree: n-1 edges, spanning, pairwise distinct colors.
struct TreeCertificate {
  std::vector<Edge> edges;
};

namespace detail {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Maximum common independent set of the graphic matroid (forests) and the
// color partition matroid (at most one edge per color), grown by shortest
// augmenting paths in the exchange graph. Ties break on the smallest edge
// index throughout.
struct MatroidIntersection {
  const EdgeColoredGraph& g;
  std::vector<char> in_set;
  std::vector<int> set_sizes_per_round;

  explicit MatroidIntersection(const EdgeColoredGraph& host) : g(host), in_set(host.edges().size(), 0) {}

  std::vector<int> current() const {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(in_set.size()); ++i)
      if (in_set[i]) ids.push_back(i);
    return ids;
  }

  // component labels of the forest spanned by the current set
  std::vector<int> forest_components() const {
    Dsu dsu(g.order());
    for (int i = 0; i < static_cast<int>(in_set.size()); ++i)
      if (in_set[i]) dsu.unite(g.edges()[i].u, g.edges()[i].v);
    std::vector<int> label(g.order());
    for (Vertex v = 0; v < g.order(); ++v) label[v] = dsu.find(v);
    return label;
  }

  // the unique cycle created by adding edge x to the forest, as edge indices
  std::vector<int> forest_cycle(int x) const {
    std::vector<std::vector<std::pair<Vertex, int>>> tree(g.order());
    for (int i = 0; i < static_cast<int>(in_set.size()); ++i)
      if (in_set[i]) {
        tree[g.edges()[i].u].push_back({g.edges()[i].v, i});
        tree[g.edges()[i].v].push_back({g.edges()[i].u, i});
      }
    Vertex src = g.edges()[x].u, dst = g.edges()[x].v;
    std::vector<int> via(g.order(), -1);
    std::vector<Vertex> prev(g.order(), -1);
    std::deque<Vertex> queue{src};
    prev[src] = src;
    while (!queue.empty()) {
      Vertex at = queue.front();
      queue.pop_front();
      if (at == dst) break;
      for (auto [to, idx] : tree[at])
        if (prev[to] < 0) {
          prev[to] = at;
          via[to] = idx;
          queue.push_back(to);
        }
    }
    std::vector<int> cycle;
    if (prev[dst] < 0) return cycle;  // different components: no cycle
    for (Vertex at = dst; at != src; at = prev[at]) cycle.push_back(via[at]);
    return cycle;
  }

  bool augment() {
    int m = static_cast<int>(in_set.size());
    std::vector<int> color_holder(g.color_count(), -1);
    for (int i = 0; i < m; ++i)
      if (in_set[i]) color_holder[g.color_index(g.edges()[i].c)] = i;
    auto components = forest_components();

    // sources: addable to the forest; sinks: color unused
    std::vector<char> is_source(m, 0), is_sink(m, 0);
    std::vector<std::vector<int>> cycle_of(m);
    for (int x = 0; x < m; ++x) {
      if (in_set[x]) continue;
      const Edge& e = g.edges()[x];
      if (components[e.u] != components[e.v])
        is_source[x] = 1;
      else
        cycle_of[x] = forest_cycle(x);
      if (color_holder[g.color_index(e.c)] < 0) is_sink[x] = 1;
    }

    // BFS over the exchange graph from all sources, smallest index first
    std::vector<int> prev(m, -2);
    std::deque<int> queue;
    for (int x = 0; x < m; ++x)
      if (is_source[x]) {
        prev[x] = -1;
        queue.push_back(x);
      }
    int reached = -1;
    while (!queue.empty() && reached < 0) {
      int at = queue.front();
      queue.pop_front();
      if (!in_set[at] && is_sink[at]) {
        reached = at;
        break;
      }
      if (!in_set[at]) {
        // M2 exchange: x -> y where y holds x's color
        int y = color_holder[g.color_index(g.edges()[at].c)];
        if (y >= 0 && prev[y] == -2) {
          prev[y] = at;
          queue.push_back(y);
        }
      } else {
        // M1 exchange: y -> x where x's cycle passes through y
        for (int x = 0; x < m; ++x) {
          if (in_set[x] || prev[x] != -2) continue;
          if (is_source[x]) continue;  // already a BFS root
          if (std::find(cycle_of[x].begin(), cycle_of[x].end(), at) != cycle_of[x].end()) {
            prev[x] = at;
            queue.push_back(x);
          }
        }
      }
    }
    if (reached < 0) return false;
    for (int at = reached; at != -1; at = prev[at]) in_set[at] ^= 1;
    set_sizes_per_round.push_back(static_cast<int>(current().size()));
    return true;
  }

  int run() {
    while (augment()) {
    }
    return static_cast<int>(current().size());
  }
};

}  // namespace detail

struct RainbowForestResult {
  std::vector<Edge> edges;               // maximum rainbow forest
  std::vector<int> sizes_per_round;      // common independent set growth
};

inline RainbowForestResult max_rainbow_forest(const EdgeColoredGraph& g) {
  detail::MatroidIntersection mi(g);
  mi.run();
  RainbowForestResult out;
  for (int i : mi.current()) out.edges.push_back(g.edges()[i]);
  out.sizes_per_round = mi.set_sizes_per_round;
  return out;
}

// Exact constructive search: a certificate exists iff the maximum common
// independent set has n-1 edges. Disconnected graphs simply return nothing.
inline std::optional<TreeCertificate> find_rainbow_spanning_tree(const EdgeColoredGraph& g) {
  if (g.order() == 0) return std::nullopt;
  auto forest = max_rainbow_forest(g);
  if (static_cast<int>(forest.edges.size()) != g.order() - 1) return std::nullopt;
  return TreeCertificate{std::move(forest.edges)};
}

inline bool validate_tree_certificate(const EdgeColoredGraph& g, const TreeCertificate& cert) {
  if (static_cast<int>(cert.edges.size()) != g.order() - 1) return false;
  detail::Dsu dsu(g.order());
  std::vector<Color> cs;
  for (const auto& e : cert.edges) {
    auto c = g.edge_color(e.u, e.v);
    if (!c || *c != e.c) return false;
    if (!dsu.unite(e.u, e.v)) return false;  // cycle
    cs.push_back(e.c);
  }
  std::sort(cs.begin(), cs.end());
  return std::adjacent_find(cs.begin(), cs.end()) == cs.end();
}

inline int component_count(const EdgeColoredGraph& g, const std::vector<char>& removed_color_idx) {
  detail::Dsu dsu(g.order());
  int comps = g.order();
  for (const auto& e : g.edges()) {
    if (removed_color_idx[g.color_index(e.c)]) continue;
    if (dsu.unite(e.u, e.v)) --comps;
  }
  return comps;
}

// Exhaustive color-removal criterion: for every 1 <= r <= n-2 and every set
// of r colors, deleting those colors leaves at most r+1 components. True iff
// a rainbow spanning tree exists (on connected hosts). Exponential in |P|.
inline bool criterion_oracle(const EdgeColoredGraph& g) {
  if (g.order() == 0) throw InputError("criterion oracle needs a non-empty graph");
  int p = g.color_count();
  if (p > 20) throw InputError("criterion oracle is limited to |P| <= 20 colors");
  {
    std::vector<char> none(p, 0);
    if (component_count(g, none) != 1) throw InputError("criterion oracle needs a connected graph");
  }
  int n = g.order();
  for (uint32_t mask = 1; mask < (1u << p); ++mask) {
    int r = std::popcount(mask);
    if (r > n - 2) continue;
    std::vector<char> removed(p, 0);
    for (int i = 0; i < p; ++i) removed[i] = (mask >> i) & 1;
    if (component_count(g, removed) > r + 1) return false;
  }
  return true;
}

// As above but reports one violating color set (empty when the criterion holds).
inline std::vector<Color> criterion_witness(const EdgeColoredGraph& g) {
  if (g.order() == 0) throw InputError("criterion oracle needs a non-empty graph");
  int p = g.color_count();
  if (p > 20) throw InputError("criterion oracle is limited to |P| <= 20 colors");
  int n = g.order();
  for (uint32_t mask = 1; mask < (1u << p); ++mask) {
    int r = std::popcount(mask);
    if (r > n - 2) continue;
    std::vector<char> removed(p, 0);
    for (int i = 0; i < p; ++i) removed[i] = (mask >> i) & 1;
    if (component_count(g, removed) > r + 1) {
      std::vector<Color> witness;
      for (int i = 0; i < p; ++i)
        if (removed[i]) witness.push_back(g.colors()[i]);
      return witness;
    }
  }
  return {};
}

}  // namespace rainbow
