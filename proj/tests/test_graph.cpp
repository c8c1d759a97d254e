#include "ptheta/graph.hpp"

#include <doctest.h>

#include <sstream>

using namespace ptheta;

TEST_SUITE("graph") {

TEST_CASE("construction dedupes and sorts edges") {
  Graph g(4, {{2, 1}, {0, 3}, {1, 2}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 3}, {1, 2}});
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 1));
  CHECK(g.degree(1) == 1);
  CHECK(g.neighbours(3) == std::vector<int>{0});
}

TEST_CASE("construction rejects loops and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), GraphError);
  CHECK_THROWS_AS(Graph(-1), GraphError);
}

TEST_CASE("adjacency is symmetric with zero diagonal") {
  const auto a = petersen_graph().adjacency<double>();
  CHECK(a.isApprox(a.transpose()));
  CHECK(a.diagonal().isZero());
  CHECK(a.sum() == doctest::Approx(30.0));
}

TEST_CASE("complement is an involution and partitions the pairs") {
  for (const Graph& g : {cycle_graph(7), petersen_graph(), clique_union({3, 2}), empty_graph(1)}) {
    const Graph h = complement(g);
    const int n = g.num_vertices();
    CHECK(g.num_edges() + h.num_edges() == n * (n - 1) / 2);
    CHECK(complement(h) == g);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) CHECK(g.has_edge(i, j) != h.has_edge(i, j));
  }
}

TEST_CASE("families") {
  CHECK(complete_graph(5).num_edges() == 10);
  CHECK(empty_graph(5).num_edges() == 0);
  CHECK(cycle_graph(5).num_edges() == 5);
  CHECK(path_graph(4).num_edges() == 3);
  CHECK(petersen_graph().num_edges() == 15);
  for (int v = 0; v < 10; ++v) CHECK(petersen_graph().degree(v) == 3);
  const Graph c = circulant_graph(8, {1, 2});
  CHECK(c.num_edges() == 16);
  CHECK(c.has_edge(0, 2));
  CHECK_FALSE(c.has_edge(0, 3));
  const Graph cu = clique_union({4, 3, 2});
  CHECK(cu.num_vertices() == 9);
  CHECK(cu.num_edges() == 6 + 3 + 1);
  CHECK(count_components(cu) == 3);
  const Graph cpi = clique_plus_isolated(2, 7);
  CHECK(cpi.num_vertices() == 9);
  CHECK(cpi.num_edges() == 1);
  CHECK(complement(cpi).num_edges() == 35);
  CHECK(cycle_graph(5).known_vertex_transitive());
}

TEST_CASE("disjoint union and induced subgraphs") {
  const Graph g = disjoint_union(complete_graph(3), path_graph(2));
  CHECK(g.num_vertices() == 5);
  CHECK(g.has_edge(3, 4));
  CHECK_FALSE(g.has_edge(2, 3));
  const Graph h = induced_subgraph(complement(clique_plus_isolated(2, 7)), {2, 0, 1});
  CHECK(h.num_vertices() == 3);
  CHECK(h.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(count_components(empty_graph(4)) == 4);
}

TEST_CASE("family specs") {
  CHECK(generate("clique_union:4,3,2") == clique_union({4, 3, 2}));
  CHECK(generate("circulant:8:1,2") == circulant_graph(8, {1, 2}));
  CHECK(generate("petersen") == petersen_graph());
  CHECK(generate("clique_plus_isolated:2,7") == clique_plus_isolated(2, 7));
  CHECK(generate("cycle:5") == cycle_graph(5));
  CHECK_THROWS_AS(generate("nonsense:3"), GraphError);
  CHECK_THROWS_AS(generate("complete:x"), GraphError);
  CHECK_THROWS_AS(generate("complete:3,4"), GraphError);
  CHECK_THROWS_AS(generate("circulant:8"), GraphError);
}

TEST_CASE("dimacs round trip") {
  for (const Graph& g : {petersen_graph(), empty_graph(3), clique_union({2, 2})})
    CHECK(parse_dimacs(to_dimacs(g)) == g);
}

TEST_CASE("dimacs parsing") {
  std::vector<std::string> warnings;
  const Graph g = parse_dimacs("c comment\np edge 3 2\ne 1 3\n\ne 2 3\n", &warnings);
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(warnings.empty());

  parse_dimacs("p col 3 3\ne 1 2\ne 2 1\ne 2 3\n", &warnings);
  CHECK(warnings.size() == 1);

  warnings.clear();
  parse_dimacs("p edge 3 5\ne 1 2\n", &warnings);
  CHECK(warnings.size() == 1);
}

TEST_CASE("dimacs errors") {
  CHECK_THROWS_AS(parse_dimacs("e 1 2\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("c only\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1 4\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 2 2\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\nx 1 2\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 0 0\n"), GraphError);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 0\np edge 3 0\n"), GraphError);
  CHECK_THROWS_AS(read_dimacs_file("/nonexistent/file.col"), GraphError);
}

TEST_CASE("spec examples") {
  CHECK(complement(complete_graph(3)) == empty_graph(3));
  CHECK(complement(clique_union({2, 2})).num_edges() == 4);
  // 0-2-1-3-0
  CHECK(complement(clique_union({2, 2})) == Graph(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}));
  CHECK(circulant_graph(5, {1}) == cycle_graph(5));
  CHECK(clique_plus_isolated(8, 1).num_edges() == 28);
  CHECK(disjoint_union(complete_graph(2), Graph(1)) == clique_plus_isolated(2, 1));
  CHECK(disjoint_union(complete_graph(3), complete_graph(3)).num_edges() == 6);
  CHECK(disjoint_union(empty_graph(2), empty_graph(3)) == empty_graph(5));
  CHECK(induced_subgraph(complete_graph(9), {0, 1, 2}) == complete_graph(3));
  CHECK(induced_subgraph(cycle_graph(5), {0, 1, 2}) == path_graph(3));
  CHECK(parse_dimacs("p edge 2 0\n") == empty_graph(2));
}

TEST_CASE("generator and subgraph errors") {
  CHECK_THROWS_AS(complete_graph(0), GraphError);
  CHECK_THROWS_AS(clique_union({3, 0}), GraphError);
  CHECK_THROWS_AS(circulant_graph(5, {3}), GraphError);
  CHECK_THROWS_AS(circulant_graph(5, {0}), GraphError);
  CHECK_THROWS(induced_subgraph(cycle_graph(5), {}));
  CHECK_THROWS(induced_subgraph(cycle_graph(5), {0, 5}));
}

TEST_CASE("vertex-transitive flags") {
  CHECK(clique_union({3, 3, 3}).known_vertex_transitive());
  CHECK_FALSE(clique_union({4, 3, 2}).known_vertex_transitive());
  CHECK_FALSE(path_graph(3).known_vertex_transitive());
  CHECK(petersen_graph().known_vertex_transitive());
  CHECK(complement(petersen_graph()).known_vertex_transitive());
}

}
