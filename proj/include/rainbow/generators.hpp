#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Tournament-plus-two-dominated-vertices instance: a circulant regular
// tournament on n-2 vertices, two extra vertices x = n-2 and y = n-1 with
// arcs into every core vertex, and the edge under arc u->w colored with w's
// own fresh color. Minimum color degree (n-1)/2, attained on the core.
inline EdgeColoredGraph gen_fm_example(int n) {
  if (n < 5 || n % 2 == 0) throw InputError("fm_example needs odd n >= 5");
  int core = n - 2;
  int span = (core - 1) / 2;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < core; ++i)
    for (Vertex j = i + 1; j < core; ++j) {
      // circulant orientation: i -> j iff (j - i) mod core in [1, span]
      Vertex head = ((j - i) % core <= span) ? j : i;
      edges.push_back(make_edge(i, j, head));
    }
  for (Vertex z : {core, core + 1})
    for (Vertex w = 0; w < core; ++w) edges.push_back(make_edge(z, w, w));
  return EdgeColoredGraph(n, std::move(edges));
}

// The dominated pair of gen_fm_example.
inline std::pair<Vertex, Vertex> fm_special_pair(int n) { return {n - 2, n - 1}; }

// Two rainbow cliques on disjoint palettes joined by k-1 shifted perfect
// matchings, one fresh color per matching. Minimum color degree n/2 + k - 2.
inline EdgeColoredGraph gen_two_clique_matchings(int n, int k) {
  if (n < 4 || n % 2 != 0) throw InputError("two_clique_matchings needs even n >= 4");
  if (k < 1) throw InputError("two_clique_matchings needs k >= 1");
  int half = n / 2;
  if (k - 1 > half) throw InputError("only n/2 disjoint matchings are available");
  std::vector<Edge> edges;
  Color next = 0;
  for (Vertex i = 0; i < half; ++i)
    for (Vertex j = i + 1; j < half; ++j) edges.push_back(make_edge(i, j, next++));
  for (Vertex i = 0; i < half; ++i)
    for (Vertex j = i + 1; j < half; ++j) edges.push_back(make_edge(half + i, half + j, next++));
  for (int shift = 0; shift < k - 1; ++shift) {
    Color c = next++;
    for (Vertex i = 0; i < half; ++i) edges.push_back(make_edge(i, half + (i + shift) % half, c));
  }
  return EdgeColoredGraph(n, std::move(edges));
}

// n-2 rounds of the round-robin one-factorization of K_n, one fresh color per
// round. The graph is (n-2)-regular and every color class a perfect matching.
inline EdgeColoredGraph gen_matching_union(int n) {
  if (n < 4 || n % 2 != 0) throw InputError("matching_union needs even n >= 4");
  std::vector<Edge> edges;
  int ring = n - 1;
  for (int round = 0; round < n - 2; ++round) {
    edges.push_back(make_edge(n - 1, round, round));
    for (int i = 1; i <= n / 2 - 1; ++i) {
      Vertex a = (round + i) % ring;
      Vertex b = ((round - i) % ring + ring) % ring;
      edges.push_back(make_edge(a, b, round));
    }
  }
  return EdgeColoredGraph(n, std::move(edges));
}

// Random graph with guaranteed minimum degree, random coloring, then greedy
// recoloring of duplicate-colored incident edges until every vertex sees at
// least ceil(target) distinct colors. Deterministic for a fixed seed.
inline EdgeColoredGraph gen_random_colored(int n, Threshold target, int palette, uint64_t seed) {
  if (n < 1) throw InputError("random_colored needs n >= 1");
  if (palette < 1) throw InputError("palette must be positive");
  long long want = ceil_value(target);
  if (want > n - 1)
    throw InputError("color degree target " + to_string(target) + " exceeds the degree bound n-1");
  if (want > palette) throw InputError("color degree target exceeds the palette size");

  Rng rng(seed);
  std::vector<char> adj(static_cast<size_t>(n) * n, 0);
  std::vector<int> deg(n, 0);
  auto connect = [&](Vertex a, Vertex b) {
    adj[static_cast<size_t>(a) * n + b] = adj[static_cast<size_t>(b) * n + a] = 1;
    ++deg[a];
    ++deg[b];
  };
  double p = n >= 2 ? std::min(1.0, (static_cast<double>(want) + 2.0 + 0.05 * n) / (n - 1)) : 0.0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (rng.unit() < p) connect(a, b);
  for (Vertex a = 0; a < n; ++a) {
    if (deg[a] >= want) continue;
    std::vector<Vertex> candidates;
    for (Vertex b = 0; b < n; ++b)
      if (b != a && !adj[static_cast<size_t>(a) * n + b]) candidates.push_back(b);
    while (deg[a] < want) {
      size_t pick = rng.below(candidates.size());
      connect(a, candidates[pick]);
      candidates.erase(candidates.begin() + static_cast<long>(pick));
    }
  }

  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (adj[static_cast<size_t>(a) * n + b])
        edges.push_back({a, b, static_cast<Color>(rng.below(static_cast<uint64_t>(palette)))});

  std::vector<std::map<Color, int>> at(n);
  for (const auto& e : edges) {
    ++at[e.u][e.c];
    ++at[e.v][e.c];
  }
  auto recolor = [&](size_t idx, Color to) {
    Edge& e = edges[idx];
    for (Vertex x : {e.u, e.v}) {
      if (--at[x][e.c] == 0) at[x].erase(e.c);
      ++at[x][to];
    }
    e.c = to;
  };
  long long budget = 50LL * n;
  for (long long iter = 0; iter < budget; ++iter) {
    Vertex low = -1;
    for (Vertex v = 0; v < n; ++v)
      if (static_cast<long long>(at[v].size()) < want) {
        low = v;
        break;
      }
    if (low < 0) break;
    // candidate edges at `low` whose color is duplicated there
    std::vector<size_t> dups;
    for (size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if ((e.u == low || e.v == low) && at[low][e.c] >= 2) dups.push_back(i);
    }
    if (dups.empty()) break;  // deg >= want makes this unreachable
    auto fresh_colors = [&](Vertex a, Vertex b) {
      std::vector<Color> out;
      for (Color c = 0; c < palette; ++c)
        if (!at[a].count(c) && !at[b].count(c)) out.push_back(c);
      return out;
    };
    // first a recoloring that cannot hurt the other endpoint, then one whose
    // old color survives there, then any color new at `low`
    bool done = false;
    for (size_t i : dups) {
      Vertex other = edges[i].u == low ? edges[i].v : edges[i].u;
      auto fresh = fresh_colors(low, other);
      if (!fresh.empty()) {
        recolor(i, fresh[rng.below(fresh.size())]);
        done = true;
        break;
      }
    }
    if (!done)
      for (size_t i : dups) {
        Vertex other = edges[i].u == low ? edges[i].v : edges[i].u;
        if (at[other][edges[i].c] < 2) continue;
        std::vector<Color> pool;
        for (Color c = 0; c < palette; ++c)
          if (!at[low].count(c)) pool.push_back(c);
        recolor(i, pool[rng.below(pool.size())]);
        done = true;
        break;
      }
    if (!done) {
      size_t i = dups.front();
      std::vector<Color> pool;
      for (Color c = 0; c < palette; ++c)
        if (!at[low].count(c)) pool.push_back(c);
      recolor(i, pool[rng.below(pool.size())]);
    }
  }
  EdgeColoredGraph g(n, std::move(edges));
  if (n > 0 && min_color_degree(g) < want)
    throw GenerationError("color repair budget exhausted at n=" + std::to_string(n) +
                          " target=" + to_string(target) + " palette=" + std::to_string(palette));
  return g;
}

enum class Family { fm_example, two_clique_matchings, matching_union, random_colored };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::fm_example: return "fm_example";
    case Family::two_clique_matchings: return "two_clique_matchings";
    case Family::matching_union: return "matching_union";
    case Family::random_colored: return "random_colored";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  if (name == "fm_example") return Family::fm_example;
  if (name == "two_clique_matchings") return Family::two_clique_matchings;
  if (name == "matching_union") return Family::matching_union;
  if (name == "random_colored") return Family::random_colored;
  throw InputError("unknown family '" + name + "'");
}

struct InstanceSpec {
  Family family = Family::random_colored;
  int n = 0;
  int k = 1;             // two_clique_matchings
  Threshold target{0, 1};  // random_colored
  int palette = 0;       // random_colored; 0 = 4 * ceil(target), at least 4
  uint64_t seed = 0;     // random_colored
};

inline int auto_palette(Threshold target) {
  return std::max<long long>(4, 4 * ceil_value(target));
}

inline EdgeColoredGraph generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::fm_example: return gen_fm_example(spec.n);
    case Family::two_clique_matchings: return gen_two_clique_matchings(spec.n, spec.k);
    case Family::matching_union: return gen_matching_union(spec.n);
    case Family::random_colored:
      return gen_random_colored(spec.n, spec.target, spec.palette > 0 ? spec.palette : auto_palette(spec.target),
                                spec.seed);
  }
  throw InputError("unknown family");
}

}  // namespace rainbow
