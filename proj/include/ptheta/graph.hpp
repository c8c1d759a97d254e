#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptheta {

// Vertices are 0-based in the C++ API. DIMACS files, family specs, CLI output
// and JSON witnesses use 1-based labels.

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Edge = std::pair<int, int>;  // i < j

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Builds from an edge list. Duplicates and either orientation are accepted;
  /// self-loops and out-of-range endpoints throw GraphError.
  Graph(int n, const std::vector<Edge>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int i, int j) const;
  int degree(int v) const;

  /// Sorted list of (i, j) with i < j.
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<int> neighbours(int v) const;

  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, n_);
    for (const auto& [i, j] : edges_) {
      a(i, j) = Scalar(1);
      a(j, i) = Scalar(1);
    }
    return a;
  }

  /// Set by generators whose output is vertex-transitive by construction.
  bool known_vertex_transitive() const { return known_vt_; }
  Graph with_vertex_transitive_flag(bool flag) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<char> adj_;
  bool known_vt_ = false;
};

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& g, const Graph& h);
/// `keep` holds 0-based vertices; the result is relabelled in ascending order.
Graph induced_subgraph(const Graph& g, std::vector<int> keep);

/// Number of connected components.
int count_components(const Graph& g);

// Generators.
Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph circulant_graph(int n, const std::vector<int>& offsets);
Graph petersen_graph();
Graph clique_union(const std::vector<int>& sizes);
Graph clique_plus_isolated(int clique_size, int isolated);

/// Parses "family:params" (e.g. "clique_union:4,3,2", "circulant:8:1,2",
/// "petersen") and generates the graph.
///
/// Families: complete:n, empty:n, cycle:n, path:n, circulant:n:s1,s2,...,
/// petersen, clique_union:n1,...,nk, clique_plus_isolated:n1,m.
Graph generate(std::string_view family_spec);

// DIMACS .col text format.
Graph parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
Graph read_dimacs_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_dimacs(std::ostream& out, const Graph& g);
std::string to_dimacs(const Graph& g);

}  // namespace ptheta
