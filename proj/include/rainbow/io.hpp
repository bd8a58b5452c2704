#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

namespace detail {

inline bool is_blank_or_comment(const std::string& s) {
  for (char ch : s) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline std::vector<long long> parse_ints(const std::string& s, size_t expect, int line_no) {
  std::istringstream in(s);
  std::vector<long long> out;
  long long x;
  while (in >> x) out.push_back(x);
  std::string rest;
  if (!in.eof() && (in.clear(), in >> rest)) throw ParseError(line_no, "unexpected token '" + rest + "'");
  if (out.size() != expect)
    throw ParseError(line_no, "expected " + std::to_string(expect) + " integers, got " + std::to_string(out.size()));
  return out;
}

}  // namespace detail

// Text format: first data line "n m", then m lines "u v c". Lines starting
// with '#' are comments. The writer emits the canonical form (u < v,
// lexicographically sorted edges), so write/read/write round-trips bit-exactly.
inline EdgeColoredGraph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank_or_comment(line)) continue;
    if (n < 0) {
      auto head = detail::parse_ints(line, 2, line_no);
      n = head[0];
      m = head[1];
      if (n < 0) throw ParseError(line_no, "negative vertex count");
      if (m < 0) throw ParseError(line_no, "negative edge count");
      if (n > 10'000'000) throw ParseError(line_no, "vertex count out of supported range");
      if (m > n * (n - 1) / 2) throw ParseError(line_no, "edge count exceeds the simple-graph bound");
      edges.reserve(m);
      continue;
    }
    if (static_cast<long long>(edges.size()) == m)
      throw ParseError(line_no, "extra edge line (header declared m=" + std::to_string(m) + ")");
    auto t = detail::parse_ints(line, 3, line_no);
    if (t[0] < 0 || t[0] >= n || t[1] < 0 || t[1] >= n)
      throw ParseError(line_no, "edge endpoint out of range [0," + std::to_string(n) + ")");
    if (t[0] == t[1]) throw ParseError(line_no, "self-loop");
    if (t[2] < 0) throw ParseError(line_no, "negative color id");
    Edge e = make_edge(static_cast<Vertex>(t[0]), static_cast<Vertex>(t[1]), static_cast<Color>(t[2]));
    if (!seen.emplace(e.u, e.v).second)
      throw ParseError(line_no, "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    edges.push_back(e);
  }
  if (n < 0) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(line_no, "expected " + std::to_string(m) + " edges, file has " + std::to_string(edges.size()));
  return EdgeColoredGraph(static_cast<int>(n), std::move(edges));
}

inline void write_graph(std::ostream& out, const EdgeColoredGraph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.c << '\n';
}

inline std::string to_text(const EdgeColoredGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline EdgeColoredGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_graph(in);
}

inline void write_graph_file(const std::filesystem::path& path, const EdgeColoredGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_graph(out, g);
}

}  // namespace rainbow
