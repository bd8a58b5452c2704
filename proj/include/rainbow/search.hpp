#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

enum class PathFlavor { rainbow, proper };

// A path with its edge colors, checkable against the host graph.
struct PathCertificate {
  std::vector<Vertex> vertices;
  std::vector<Color> colors;
  PathFlavor flavor = PathFlavor::rainbow;

  int length() const { return static_cast<int>(colors.size()); }
};

// k internally disjoint u,v-paths whose edge union is rainbow.
struct KConnectCertificate {
  std::vector<PathCertificate> paths;
};

enum class SearchStatus { found, absent, budget_exhausted };

struct ExactSearchOutcome {
  SearchStatus status = SearchStatus::absent;
  std::optional<PathCertificate> certificate;
  uint64_t nodes_expanded = 0;
};

// Independent certificate checker: edges are looked up in the raw sorted edge
// list, never through the adjacency structures the engines walk.
inline bool validate_certificate(const EdgeColoredGraph& g, const PathCertificate& cert) {
  if (cert.vertices.size() != cert.colors.size() + 1) return false;
  if (cert.colors.empty()) return false;
  for (Vertex v : cert.vertices)
    if (v < 0 || v >= g.order()) return false;
  std::vector<Vertex> sorted = cert.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (size_t i = 0; i + 1 < cert.vertices.size(); ++i) {
    auto c = g.edge_color(cert.vertices[i], cert.vertices[i + 1]);
    if (!c || *c != cert.colors[i]) return false;
  }
  if (cert.flavor == PathFlavor::rainbow) {
    std::vector<Color> cs = cert.colors;
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) return false;
  } else {
    for (size_t i = 1; i < cert.colors.size(); ++i)
      if (cert.colors[i] == cert.colors[i - 1]) return false;
  }
  return true;
}

inline bool validate_kconnect(const EdgeColoredGraph& g, Vertex u, Vertex v, int k,
                              const KConnectCertificate& cert) {
  if (static_cast<int>(cert.paths.size()) != k) return false;
  std::vector<Vertex> internals;
  std::vector<Color> all_colors;
  for (const auto& p : cert.paths) {
    if (!validate_certificate(g, p)) return false;
    if (p.flavor != PathFlavor::rainbow) return false;
    if (p.vertices.front() != u || p.vertices.back() != v) return false;
    internals.insert(internals.end(), p.vertices.begin() + 1, p.vertices.end() - 1);
    all_colors.insert(all_colors.end(), p.colors.begin(), p.colors.end());
  }
  std::sort(internals.begin(), internals.end());
  if (std::adjacent_find(internals.begin(), internals.end()) != internals.end()) return false;
  std::sort(all_colors.begin(), all_colors.end());
  if (std::adjacent_find(all_colors.begin(), all_colors.end()) != all_colors.end()) return false;
  return true;
}

namespace detail {

// BFS distances to `target` on the subgraph that avoids banned vertices and
// banned colors. A lower bound for any path the engines may still use.
inline std::vector<int> bounded_distances(const EdgeColoredGraph& g, Vertex target,
                                          const std::vector<char>& banned_vertex,
                                          const std::vector<char>& banned_color) {
  std::vector<int> dist(g.order(), std::numeric_limits<int>::max());
  std::deque<Vertex> queue;
  dist[target] = 0;
  queue.push_back(target);
  while (!queue.empty()) {
    Vertex at = queue.front();
    queue.pop_front();
    for (const auto& inc : g.neighbors(at)) {
      if (banned_vertex[inc.to]) continue;
      if (!banned_color.empty() && banned_color[inc.color_idx]) continue;
      if (dist[inc.to] != std::numeric_limits<int>::max()) continue;
      dist[inc.to] = dist[at] + 1;
      queue.push_back(inc.to);
    }
  }
  return dist;
}

struct PathDfs {
  PathDfs(const EdgeColoredGraph& host, Vertex goal, bool proper_mode, uint64_t node_cap)
      : g(host), target(goal), proper(proper_mode), cap(node_cap) {}

  const EdgeColoredGraph& g;
  Vertex target;
  bool proper;
  int limit = 0;
  uint64_t cap;  // 0 = unlimited
  uint64_t nodes = 0;
  bool aborted = false;
  std::vector<char> visited;     // banned vertices + current path
  std::vector<char> used_color;  // forbidden colors + current path (rainbow)
  std::vector<int> dist;
  std::vector<Vertex> seq;
  std::vector<Color> cols;

  // Extends the path from `at` (depth edges used). Neighbors ascend, so the
  // first complete path of length `limit` is the lexicographically least.
  bool extend(Vertex at, int depth) {
    if (cap && ++nodes > cap) {
      aborted = true;
      return false;
    }
    for (const auto& inc : g.neighbors(at)) {
      Vertex w = inc.to;
      if (proper) {
        if (depth > 0 && inc.color == cols.back()) continue;
      } else if (used_color[inc.color_idx]) {
        continue;
      }
      if (w == target) {
        if (depth + 1 == limit) {
          seq.push_back(w);
          cols.push_back(inc.color);
          return true;
        }
        continue;  // target can only be the final vertex of a simple path
      }
      if (depth + 1 >= limit) continue;
      if (visited[w]) continue;
      if (dist[w] == std::numeric_limits<int>::max() || depth + 1 + dist[w] > limit) continue;
      visited[w] = 1;
      if (!proper) used_color[inc.color_idx] = 1;
      seq.push_back(w);
      cols.push_back(inc.color);
      if (extend(w, depth + 1)) return true;
      if (aborted) return false;
      seq.pop_back();
      cols.pop_back();
      visited[w] = 0;
      if (!proper) used_color[inc.color_idx] = 0;
    }
    return false;
  }
};

inline ExactSearchOutcome exact_path_search(const EdgeColoredGraph& g, Vertex u, Vertex v, int max_len,
                                            bool proper, const std::vector<Color>& forbidden_colors,
                                            const std::vector<Vertex>& forbidden_vertices, uint64_t node_cap) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw InputError("path endpoints must differ");
  if (max_len < 1) throw InputError("max_len must be at least 1");

  std::vector<char> banned_vertex(g.order(), 0);
  for (Vertex x : forbidden_vertices) {
    g.check_vertex(x);
    if (x == u || x == v) throw InputError("endpoint listed among forbidden vertices");
    banned_vertex[x] = 1;
  }
  std::vector<char> banned_color(g.color_count(), 0);
  if (!proper)
    for (Color c : forbidden_colors)
      if (g.has_color(c)) banned_color[g.color_index(c)] = 1;

  ExactSearchOutcome out;
  PathDfs dfs(g, v, proper, node_cap);
  dfs.dist = bounded_distances(g, v, banned_vertex, proper ? std::vector<char>{} : banned_color);
  if (dfs.dist[u] == std::numeric_limits<int>::max() || dfs.dist[u] > max_len) {
    out.status = SearchStatus::absent;
    return out;
  }
  for (int limit = std::max(1, dfs.dist[u]); limit <= max_len; ++limit) {
    dfs.limit = limit;
    dfs.visited = banned_vertex;
    dfs.visited[u] = 1;
    dfs.used_color = banned_color;
    dfs.seq.assign(1, u);
    dfs.cols.clear();
    if (dfs.extend(u, 0)) {
      out.status = SearchStatus::found;
      out.certificate = PathCertificate{dfs.seq, dfs.cols, proper ? PathFlavor::proper : PathFlavor::rainbow};
      out.nodes_expanded = dfs.nodes;
      return out;
    }
    if (dfs.aborted) {
      out.status = SearchStatus::budget_exhausted;
      out.nodes_expanded = dfs.nodes;
      return out;
    }
  }
  out.status = SearchStatus::absent;
  out.nodes_expanded = dfs.nodes;
  return out;
}

}  // namespace detail

// Exact bounded search; returns the lexicographically least among the
// shortest rainbow certificates, or nothing when none exists.
inline std::optional<PathCertificate> find_rainbow_path_exact(const EdgeColoredGraph& g, Vertex u, Vertex v,
                                                              int max_len,
                                                              const std::vector<Color>& forbidden_colors = {},
                                                              const std::vector<Vertex>& forbidden_vertices = {}) {
  return detail::exact_path_search(g, u, v, max_len, false, forbidden_colors, forbidden_vertices, 0).certificate;
}

// Same search with a node-expansion budget; budget exhaustion is reported
// instead of being treated as absence.
inline ExactSearchOutcome find_rainbow_path_exact_capped(const EdgeColoredGraph& g, Vertex u, Vertex v,
                                                         int max_len, uint64_t node_cap,
                                                         const std::vector<Color>& forbidden_colors = {},
                                                         const std::vector<Vertex>& forbidden_vertices = {}) {
  return detail::exact_path_search(g, u, v, max_len, false, forbidden_colors, forbidden_vertices, node_cap);
}

inline std::optional<PathCertificate> find_proper_path(const EdgeColoredGraph& g, Vertex u, Vertex v,
                                                       int max_len) {
  return detail::exact_path_search(g, u, v, max_len, true, {}, {}, 0).certificate;
}

// Unbounded variant: a simple path has at most n-1 edges.
inline std::optional<PathCertificate> find_proper_path(const EdgeColoredGraph& g, Vertex u, Vertex v) {
  return find_proper_path(g, u, v, std::max(1, g.order() - 1));
}

// Trial budget giving >= 1 - 1/odds miss probability for one existing path of
// the given length under the ell!/ell^ell success bound.
inline int cc_trials_for(int len, double odds = 100.0) {
  double t = std::ceil(std::exp(static_cast<double>(len)) * std::log(odds));
  return static_cast<int>(std::max(1.0, t));
}

// Randomized color-coding engine. Colors are hashed to max_len labels; a DP
// over (label subset, vertex) finds label-distinct walks, which are cut down
// to simple paths. One-sided: certificates are always valid, absence may be a
// false negative. Deterministic for a fixed seed.
inline std::optional<PathCertificate> find_rainbow_path_cc(const EdgeColoredGraph& g, Vertex u, Vertex v,
                                                           int max_len, int trials, uint64_t seed) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw InputError("path endpoints must differ");
  if (max_len < 1) throw InputError("max_len must be at least 1");
  if (max_len > 16) throw InputError("color-coding supports max_len <= 16");
  if (trials < 1) throw InputError("trials must be at least 1");

  const int L = max_len;
  const int subsets = 1 << L;
  {
    std::vector<char> no_ban_v(g.order(), 0);
    auto dist = detail::bounded_distances(g, v, no_ban_v, {});
    if (dist[u] == std::numeric_limits<int>::max() || dist[u] > max_len) return std::nullopt;
  }

  std::vector<int> order_by_popcount(subsets);
  for (int s = 0; s < subsets; ++s) order_by_popcount[s] = s;
  std::stable_sort(order_by_popcount.begin(), order_by_popcount.end(),
                   [](int a, int b) { return std::popcount(static_cast<unsigned>(a)) < std::popcount(static_cast<unsigned>(b)); });

  Rng rng(seed);
  std::vector<int> label(g.color_count(), 0);
  std::vector<std::vector<char>> dp(subsets, std::vector<char>(g.order(), 0));

  for (int trial = 0; trial < trials; ++trial) {
    for (auto& lab : label) lab = static_cast<int>(rng.below(static_cast<uint64_t>(L)));
    for (auto& row : dp) std::fill(row.begin(), row.end(), 0);
    dp[0][u] = 1;

    int hit_mask = -1;
    for (int idx = 0; idx < subsets && hit_mask < 0; ++idx) {
      int s = order_by_popcount[idx];
      const auto& row = dp[s];
      for (Vertex w = 0; w < g.order(); ++w) {
        if (!row[w]) continue;
        for (const auto& inc : g.neighbors(w)) {
          int bit = 1 << label[inc.color_idx];
          if (s & bit) continue;
          dp[s | bit][inc.to] = 1;
        }
      }
      // the first (smallest) superset mask containing v wins; masks of equal
      // popcount are scanned in numeric order
      if (hit_mask < 0)
        for (int probe = idx + 1; probe < subsets; ++probe) {
          int cand = order_by_popcount[probe];
          if (std::popcount(static_cast<unsigned>(cand)) != std::popcount(static_cast<unsigned>(s)) + 1) break;
          if (dp[cand][v]) {
            hit_mask = cand;
            break;
          }
        }
    }
    if (hit_mask < 0) continue;

    // backtrack a label-distinct walk, then cut cycles
    std::vector<Vertex> walk{v};
    int mask = hit_mask;
    Vertex at = v;
    bool ok = true;
    while (mask != 0 && ok) {
      ok = false;
      for (const auto& inc : g.neighbors(at)) {
        int bit = 1 << label[inc.color_idx];
        if (!(mask & bit)) continue;
        if (!dp[mask ^ bit][inc.to]) continue;
        walk.push_back(inc.to);
        at = inc.to;
        mask ^= bit;
        ok = true;
        break;
      }
    }
    if (!ok || at != u) continue;  // reconstruction failed; resample
    std::reverse(walk.begin(), walk.end());

    for (;;) {
      std::vector<int> first_pos(g.order(), -1);
      int cut_from = -1, cut_to = -1;
      for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
        if (first_pos[walk[i]] >= 0) {
          cut_from = first_pos[walk[i]];
          cut_to = i;
          break;
        }
        first_pos[walk[i]] = i;
      }
      if (cut_from < 0) break;
      walk.erase(walk.begin() + cut_from, walk.begin() + cut_to);
    }

    PathCertificate cert;
    cert.flavor = PathFlavor::rainbow;
    cert.vertices = walk;
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
      auto c = g.edge_color(walk[i], walk[i + 1]);
      if (!c) break;
      cert.colors.push_back(*c);
    }
    if (validate_certificate(g, cert) && cert.vertices.front() == u && cert.vertices.back() == v &&
        cert.length() <= max_len)
      return cert;
    // otherwise resample (rejection)
  }
  return std::nullopt;
}

enum class Engine { exact, cc };

struct ConnectOptions {
  int max_len = 9;
  Engine engine = Engine::exact;
  int cc_trials = 0;      // 0 = cc_trials_for(max_len), clamped
  uint64_t seed = 0;
  uint64_t node_cap = 0;  // exact engine: fall back to cc when exhausted
};

struct ConnectivityReport {
  bool connected = false;
  Vertex worst_u = -1, worst_v = -1;
  int worst_len = -1;
  int pairs_checked = 0;
  int cc_fallbacks = 0;
};

namespace detail {

inline int resolved_cc_trials(const ConnectOptions& opt) {
  if (opt.cc_trials > 0) return opt.cc_trials;
  return std::min(cc_trials_for(opt.max_len), 60000);
}

}  // namespace detail

// All-pairs bounded rainbow connectivity. Exact when the engine is exact and
// no node cap is hit; pair searches run in parallel and reduce in pair order.
inline ConnectivityReport is_rainbow_connected(const EdgeColoredGraph& g, const ConnectOptions& opt = {}) {
  if (g.order() < 2) throw InputError("connectivity needs at least two vertices");
  struct PairSlot {
    Vertex u, v;
    int len = -1;
    bool found = false;
    bool fell_back = false;
  };
  std::vector<PairSlot> slots;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) slots.push_back({u, v});

  int trials = detail::resolved_cc_trials(opt);
  parallel_for(static_cast<int>(slots.size()), [&](int i) {
    auto& slot = slots[i];
    std::optional<PathCertificate> cert;
    if (opt.engine == Engine::exact) {
      auto outcome = detail::exact_path_search(g, slot.u, slot.v, opt.max_len, false, {}, {}, opt.node_cap);
      if (outcome.status == SearchStatus::budget_exhausted) {
        slot.fell_back = true;
        cert = find_rainbow_path_cc(g, slot.u, slot.v, opt.max_len, trials,
                                    derive_seed(opt.seed, static_cast<uint64_t>(i)));
      } else {
        cert = outcome.certificate;
      }
    } else {
      cert = find_rainbow_path_cc(g, slot.u, slot.v, opt.max_len, trials,
                                  derive_seed(opt.seed, static_cast<uint64_t>(i)));
    }
    if (cert) {
      slot.found = true;
      slot.len = cert->length();
    }
  });

  ConnectivityReport report;
  report.connected = true;
  report.pairs_checked = static_cast<int>(slots.size());
  for (const auto& slot : slots) {
    report.cc_fallbacks += slot.fell_back;
    if (!slot.found && report.connected) {
      report.connected = false;  // worst pair = first pair with no certificate
      report.worst_u = slot.u;
      report.worst_v = slot.v;
      report.worst_len = -1;
    }
    if (report.connected && slot.len > report.worst_len) {
      report.worst_len = slot.len;
      report.worst_u = slot.u;
      report.worst_v = slot.v;
    }
  }
  return report;
}

// Iterative procedure: find a rainbow path, delete its internal vertices and
// every edge in its colors, repeat k times. Sufficient, not complete.
inline std::optional<KConnectCertificate> rainbow_k_connect(const EdgeColoredGraph& g, Vertex u, Vertex v,
                                                            int k, int max_len = 9) {
  if (k < 1) throw InputError("k must be at least 1");
  KConnectCertificate cert;
  std::vector<Color> used_colors;
  std::vector<Vertex> used_internal;
  for (int round = 0; round < k; ++round) {
    auto path = find_rainbow_path_exact(g, u, v, max_len, used_colors, used_internal);
    if (!path) return std::nullopt;
    used_colors.insert(used_colors.end(), path->colors.begin(), path->colors.end());
    used_internal.insert(used_internal.end(), path->vertices.begin() + 1, path->vertices.end() - 1);
    cert.paths.push_back(std::move(*path));
  }
  return cert;
}

// All-pairs properly-colored connectivity, unbounded path length.
inline bool is_properly_connected(const EdgeColoredGraph& g) {
  if (g.order() <= 1) return true;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) pairs.emplace_back(u, v);
  std::vector<char> ok(pairs.size(), 0);
  parallel_for(static_cast<int>(pairs.size()),
               [&](int i) { ok[i] = find_proper_path(g, pairs[i].first, pairs[i].second).has_value(); });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

}  // namespace rainbow
