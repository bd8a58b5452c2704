#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

enum class ReductionMode { structural, full_minimal };

struct ReductionReport {
  ReductionMode mode = ReductionMode::structural;
  Threshold threshold;
  std::vector<Edge> removed;  // in deletion order
};

namespace detail {

// Mutable scratch state for the reduction passes.
struct ReductionState {
  std::vector<Edge> edges;                      // kept sorted
  std::map<std::pair<Vertex, Color>, int> mono; // d_{F_c}(v)
  std::vector<int> cdeg;                        // d^c(v)

  explicit ReductionState(const EdgeColoredGraph& g) : edges(g.edges()), cdeg(g.order(), 0) {
    for (const auto& e : edges) {
      ++mono[{e.u, e.c}];
      ++mono[{e.v, e.c}];
    }
    for (Vertex v = 0; v < g.order(); ++v) cdeg[v] = color_degree(g, v);
  }

  int mono_degree(Vertex v, Color c) const {
    auto it = mono.find({v, c});
    return it == mono.end() ? 0 : it->second;
  }

  void erase(size_t idx, ReductionReport& report) {
    Edge e = edges[idx];
    report.removed.push_back(e);
    edges.erase(edges.begin() + static_cast<long>(idx));
    for (Vertex x : {e.u, e.v}) {
      int& d = mono[{x, e.c}];
      if (--d == 0) --cdeg[x];
    }
  }
};

// One structural deletion pass to fixpoint. An edge whose endpoints both have
// monochromatic degree >= 2 is precisely an edge of a monochromatic triangle
// or the middle edge of a monochromatic path on four vertices; removing it
// leaves both endpoints with an edge of that color, so no color degree moves.
inline void structural_fixpoint(ReductionState& st, ReductionReport& report) {
  bool removed = true;
  while (removed) {
    removed = false;
    for (size_t i = 0; i < st.edges.size(); ++i) {
      const Edge& e = st.edges[i];
      if (st.mono_degree(e.u, e.c) >= 2 && st.mono_degree(e.v, e.c) >= 2) {
        st.erase(i, report);
        removed = true;
        break;  // rescan from the lexicographic start
      }
    }
  }
}

inline void require_threshold(const EdgeColoredGraph& g, Threshold t) {
  if (g.order() == 0) throw InputError("reduction needs a non-empty graph");
  if (!meets(min_color_degree(g), t))
    throw InputError("minimum color degree " + std::to_string(min_color_degree(g)) +
                     " is below the threshold " + to_string(t));
}

}  // namespace detail

// Deletes monochromatic triangle edges and middle edges of monochromatic
// paths on four vertices until none remain. Color degrees are preserved
// exactly, and every color class of the output is a star forest.
inline std::pair<EdgeColoredGraph, ReductionReport> reduce_structural(const EdgeColoredGraph& g, Threshold t) {
  detail::require_threshold(g, t);
  ReductionReport report{ReductionMode::structural, t, {}};
  detail::ReductionState st(g);
  detail::structural_fixpoint(st, report);
  return {EdgeColoredGraph(g.order(), st.edges), report};
}

// Structural pass first, then keeps deleting single edges while the color
// degree threshold survives, scanning candidates in lexicographic order and
// restarting after each deletion. The output is edge-minimal: removing any
// remaining edge drops some vertex below t.
inline std::pair<EdgeColoredGraph, ReductionReport> reduce_minimal(const EdgeColoredGraph& g, Threshold t) {
  detail::require_threshold(g, t);
  ReductionReport report{ReductionMode::full_minimal, t, {}};
  detail::ReductionState st(g);
  detail::structural_fixpoint(st, report);

  auto endpoint_survives = [&](Vertex x, Color c) {
    if (st.mono_degree(x, c) >= 2) return true;  // color stays present at x
    return meets(st.cdeg[x] - 1, t);
  };
  bool removed = true;
  while (removed) {
    removed = false;
    for (size_t i = 0; i < st.edges.size(); ++i) {
      const Edge& e = st.edges[i];
      if (endpoint_survives(e.u, e.c) && endpoint_survives(e.v, e.c)) {
        st.erase(i, report);
        removed = true;
        break;
      }
    }
  }
  return {EdgeColoredGraph(g.order(), st.edges), report};
}

}  // namespace rainbow
