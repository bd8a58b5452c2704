#pragma once

#include <algorithm>
#include <bitset>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/util.hpp"

namespace rainbow {

using Vertex = int;
using Color = int;

// Undirected colored edge; endpoints are kept normalized to u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Color c = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b, Color c) {
  return a < b ? Edge{a, b, c} : Edge{b, a, c};
}

// One adjacency entry: neighbor, edge color, and the color's dense index.
struct Incidence {
  Vertex to = 0;
  Color color = 0;
  int color_idx = 0;
};

// Simple graph with colored edges. Immutable after construction; every
// mutation (reduction, deletion experiments) builds a new graph, so instances
// are safe to share across worker threads.
class EdgeColoredGraph {
 public:
  static constexpr int kColorMaskBits = 512;

  EdgeColoredGraph() = default;

  EdgeColoredGraph(int n, std::vector<Edge> edge_list) : n_(n), edges_(std::move(edge_list)) {
    if (n_ < 0) throw InputError("vertex count must be non-negative");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw InputError("edge endpoint out of range: " + describe(e));
      if (e.u == e.v) throw InputError("self-loop rejected: " + describe(e));
      if (e.c < 0) throw InputError("negative color id rejected: " + describe(e));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw InputError("duplicate edge rejected: " + describe(edges_[i]));
    }

    colors_.reserve(edges_.size());
    for (const auto& e : edges_) colors_.push_back(e.c);
    std::sort(colors_.begin(), colors_.end());
    colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());

    adj_.assign(n_, {});
    for (const auto& e : edges_) {
      int ci = color_index(e.c);
      adj_[e.u].push_back({e.v, e.c, ci});
      adj_[e.v].push_back({e.u, e.c, ci});
    }
    for (auto& list : adj_)
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.to < b.to; });

    has_mask_ = static_cast<int>(colors_.size()) <= kColorMaskBits;
    if (has_mask_) {
      mask_.assign(n_, {});
      for (const auto& e : edges_) {
        int ci = color_index(e.c);
        mask_[e.u].set(ci);
        mask_[e.v].set(ci);
      }
    }
  }

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Color>& colors() const { return colors_; }
  int color_count() const { return static_cast<int>(colors_.size()); }

  // Dense index of a color id in the sorted universe.
  int color_index(Color c) const {
    auto it = std::lower_bound(colors_.begin(), colors_.end(), c);
    if (it == colors_.end() || *it != c) throw InputError("unknown color id " + std::to_string(c));
    return static_cast<int>(it - colors_.begin());
  }

  bool has_color(Color c) const {
    return std::binary_search(colors_.begin(), colors_.end(), c);
  }

  const std::vector<Incidence>& neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  std::optional<Color> edge_color(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b, 0},
                               [](const Edge& e, const Edge& key) {
                                 return e.u != key.u ? e.u < key.u : e.v < key.v;
                               });
    if (it != edges_.end() && it->u == a && it->v == b) return it->c;
    return std::nullopt;
  }

  bool has_edge(Vertex a, Vertex b) const { return edge_color(a, b).has_value(); }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
      throw InputError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
  }

  bool has_color_mask() const { return has_mask_; }
  const std::bitset<kColorMaskBits>& color_mask(Vertex v) const {
    check_vertex(v);
    return mask_[v];
  }

 private:
  static std::string describe(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") color " + std::to_string(e.c);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Color> colors_;
  std::vector<std::vector<Incidence>> adj_;
  std::vector<std::bitset<kColorMaskBits>> mask_;
  bool has_mask_ = false;
};

// d^c(v): number of distinct colors on edges at v.
inline int color_degree(const EdgeColoredGraph& g, Vertex v) {
  g.check_vertex(v);
  if (g.has_color_mask()) return static_cast<int>(g.color_mask(v).count());
  std::vector<int> seen;
  seen.reserve(g.neighbors(v).size());
  for (const auto& inc : g.neighbors(v)) seen.push_back(inc.color_idx);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return static_cast<int>(seen.size());
}

inline int min_color_degree(const EdgeColoredGraph& g) {
  if (g.order() == 0) throw InputError("min_color_degree undefined on the empty graph");
  int best = color_degree(g, 0);
  for (Vertex v = 1; v < g.order(); ++v) best = std::min(best, color_degree(g, v));
  return best;
}

// The color class F_alpha: all edges of one color plus its degree table.
struct ColorClassView {
  Color color = 0;
  std::vector<Edge> edges;
  std::vector<int> degree;  // d_{F_alpha}(v) for every vertex
};

inline ColorClassView color_class(const EdgeColoredGraph& g, Color alpha) {
  if (!g.has_color(alpha)) throw InputError("color " + std::to_string(alpha) + " not in the color universe");
  ColorClassView view;
  view.color = alpha;
  view.degree.assign(g.order(), 0);
  for (const auto& e : g.edges()) {
    if (e.c != alpha) continue;
    view.edges.push_back(e);
    ++view.degree[e.u];
    ++view.degree[e.v];
  }
  return view;
}

// Every component is a star iff no edge joins two vertices of degree >= 2
// (such an edge is the middle of a path on four vertices or sits on a
// triangle/cycle).
inline bool is_star_forest(const ColorClassView& view) {
  for (const auto& e : view.edges)
    if (view.degree[e.u] >= 2 && view.degree[e.v] >= 2) return false;
  return true;
}

}  // namespace rainbow
