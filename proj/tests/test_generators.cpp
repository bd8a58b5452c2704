#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/search.hpp"
#include "rainbow/spanning_tree.hpp"

using namespace rainbow;

TEST_CASE("tournament-plus-pair generator") {
  CHECK_THROWS_AS(gen_fm_example(6), InputError);
  CHECK_THROWS_AS(gen_fm_example(3), InputError);

  auto g = gen_fm_example(5);
  for (Vertex v = 0; v < 3; ++v) CHECK(color_degree(g, v) == 2);
  CHECK(min_color_degree(g) == 2);

  // circulant core: in- and out-degrees of the orientation are all (n-3)/2
  for (int n : {5, 7, 9, 11}) {
    auto h = gen_fm_example(n);
    int core = n - 2;
    std::vector<int> in(core, 0), out(core, 0);
    for (const auto& e : h.edges()) {
      if (e.u >= core || e.v >= core) continue;
      Vertex head = e.c;  // arcs point at the vertex whose color they carry
      Vertex tail = e.u == head ? e.v : e.u;
      ++in[head];
      ++out[tail];
    }
    for (Vertex v = 0; v < core; ++v) {
      CHECK(in[v] == (n - 3) / 2);
      CHECK(out[v] == (n - 3) / 2);
    }
    CHECK(min_color_degree(h) == (n - 1) / 2);
    // color classes are stars centered at their head vertex
    for (Color c : h.colors()) {
      auto view = color_class(h, c);
      CHECK(is_star_forest(view));
      for (const auto& e : view.edges) CHECK((e.u == c || e.v == c));
    }
  }
}

TEST_CASE("two cliques plus matchings generator") {
  CHECK_THROWS_AS(gen_two_clique_matchings(7, 2), InputError);
  CHECK_THROWS_AS(gen_two_clique_matchings(8, 0), InputError);
  CHECK_THROWS_AS(gen_two_clique_matchings(8, 6), InputError);

  auto g = gen_two_clique_matchings(12, 2);
  CHECK(min_color_degree(g) == 6);

  auto lonely = gen_two_clique_matchings(12, 1);
  std::vector<char> no_colors(lonely.color_count(), 0);
  CHECK(component_count(lonely, no_colors) == 2);
  CHECK_FALSE(is_rainbow_connected(lonely, {}).connected);

  // dropping the matching colors disconnects the graph again
  for (int k : {2, 3}) {
    auto h = gen_two_clique_matchings(10, k);
    std::vector<char> removed(h.color_count(), 0);
    int clique_colors = 2 * (5 * 4 / 2);
    for (int i = clique_colors; i < h.color_count(); ++i) removed[i] = 1;
    CHECK(component_count(h, removed) == 2);
    CHECK(min_color_degree(h) == 5 + k - 2);
  }
}

TEST_CASE("matching union generator") {
  CHECK_THROWS_AS(gen_matching_union(7), InputError);

  auto g = gen_matching_union(6);
  CHECK(g.color_count() == 4);
  CHECK(g.size() == 12);
  for (Vertex v = 0; v < 6; ++v) CHECK(g.degree(v) == 4);
  for (Color c : g.colors()) {
    auto view = color_class(g, c);
    CHECK(view.edges.size() == 3);
    for (Vertex v = 0; v < 6; ++v) CHECK(view.degree[v] == 1);
  }
  CHECK(min_color_degree(g) == 4);
  CHECK_FALSE(find_rainbow_spanning_tree(g).has_value());
}

TEST_CASE("random generator meets its target deterministically") {
  auto g = gen_random_colored(20, {10, 1}, 40, 1);
  CHECK(min_color_degree(g) >= 10);
  CHECK(to_text(g) == to_text(gen_random_colored(20, {10, 1}, 40, 1)));
  CHECK(to_text(g) != to_text(gen_random_colored(20, {10, 1}, 40, 2)));

  CHECK_THROWS_AS(gen_random_colored(20, {21, 1}, 40, 1), InputError);
  CHECK_THROWS_AS(gen_random_colored(20, {10, 1}, 9, 1), InputError);

  auto odd_target = gen_random_colored(9, {9, 2}, 30, 5);  // 9/2 rounds up to 5
  CHECK(min_color_degree(odd_target) >= 5);
}

TEST_CASE("all generators are pure functions of their spec") {
  InstanceSpec specs[] = {
      {Family::fm_example, 9},
      {Family::two_clique_matchings, 10, 3},
      {Family::matching_union, 8},
      {Family::random_colored, 12, 1, Threshold{5, 1}, 18, 77},
  };
  for (const auto& spec : specs) CHECK(to_text(generate(spec)) == to_text(generate(spec)));
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::fm_example, Family::two_clique_matchings, Family::matching_union,
                   Family::random_colored})
    CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("nope"), InputError);
}
