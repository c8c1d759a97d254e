#include "ptheta/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ptheta {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw GraphError("vertex count must be non-negative");
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw GraphError("edge endpoint out of range");
    if (i == j) throw GraphError("self-loop on vertex " + std::to_string(i + 1));
    if (i > j) std::swap(i, j);
    if (adj_[i * n + j]) continue;
    adj_[i * n + j] = adj_[j * n + i] = 1;
    edges_.emplace_back(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::has_edge(int i, int j) const {
  return i != j && adj_[static_cast<std::size_t>(i) * n_ + j] != 0;
}

int Graph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d += has_edge(v, u);
  return d;
}

std::vector<int> Graph::neighbours(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (has_edge(v, u)) out.push_back(u);
  return out;
}

Graph Graph::with_vertex_transitive_flag(bool flag) const {
  Graph g = *this;
  g.known_vt_ = flag;
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) edges.emplace_back(i, j);
  return Graph(n, edges).with_vertex_transitive_flag(g.known_vertex_transitive());
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const int shift = g.num_vertices();
  std::vector<Edge> edges = g.edges();
  for (const auto& [i, j] : h.edges()) edges.emplace_back(i + shift, j + shift);
  return Graph(shift + h.num_vertices(), edges);
}

Graph induced_subgraph(const Graph& g, std::vector<int> keep) {
  if (keep.empty()) throw GraphError("induced subgraph needs at least one vertex");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int v : keep)
    if (v < 0 || v >= g.num_vertices()) throw GraphError("vertex out of range");
  std::vector<Edge> edges;
  const int k = static_cast<int>(keep.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(keep[a], keep[b])) edges.emplace_back(a, b);
  return Graph(k, edges);
}

int count_components(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int comps = n;
  for (const auto& [i, j] : g.edges()) {
    int a = find(i), b = find(j);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw GraphError(std::string(what) + ": size must be positive");
}

}  // namespace

Graph complete_graph(int n) {
  require_positive(n, "complete");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges).with_vertex_transitive_flag(true);
}

Graph empty_graph(int n) {
  require_positive(n, "empty");
  return Graph(n).with_vertex_transitive_flag(true);
}

Graph cycle_graph(int n) {
  require_positive(n, "cycle");
  if (n < 3) throw GraphError("cycle: need at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges).with_vertex_transitive_flag(true);
}

Graph path_graph(int n) {
  require_positive(n, "path");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph circulant_graph(int n, const std::vector<int>& offsets) {
  require_positive(n, "circulant");
  std::vector<Edge> edges;
  for (int s : offsets) {
    if (s < 1 || s > n / 2) throw GraphError("circulant: offset out of range");
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + s) % n);
  }
  return Graph(n, edges).with_vertex_transitive_flag(true);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);                // spokes
  }
  return Graph(10, edges).with_vertex_transitive_flag(true);
}

Graph clique_union(const std::vector<int>& sizes) {
  if (sizes.empty()) throw GraphError("clique_union: need at least one part");
  Graph g;
  bool first = true;
  for (int s : sizes) {
    require_positive(s, "clique_union");
    Graph k = s == 1 ? Graph(1) : complete_graph(s);
    g = first ? k : disjoint_union(g, k);
    first = false;
  }
  const bool equal = std::all_of(sizes.begin(), sizes.end(),
                                 [&](int s) { return s == sizes.front(); });
  return g.with_vertex_transitive_flag(equal);
}

Graph clique_plus_isolated(int clique_size, int isolated) {
  require_positive(clique_size, "clique_plus_isolated");
  if (isolated < 0) throw GraphError("clique_plus_isolated: negative isolated count");
  std::vector<int> sizes{clique_size};
  sizes.insert(sizes.end(), static_cast<std::size_t>(isolated), 1);
  return clique_union(sizes);
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view tok = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw GraphError("bad integer '" + std::string(tok) + "' in family spec");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<int> expect_args(const std::vector<int>& args, std::size_t count,
                             std::string_view name) {
  if (args.size() != count)
    throw GraphError(std::string(name) + ": expected " + std::to_string(count) +
                     " parameter(s)");
  return args;
}

}  // namespace

Graph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (name == "petersen") return petersen_graph();
  if (name == "circulant") {
    const auto second = rest.find(':');
    if (second == std::string_view::npos)
      throw GraphError("circulant: expected circulant:n:s1,s2,...");
    const int n = expect_args(parse_int_list(rest.substr(0, second)), 1, name)[0];
    return circulant_graph(n, parse_int_list(rest.substr(second + 1)));
  }
  const std::vector<int> args = parse_int_list(rest);
  if (name == "complete") return complete_graph(expect_args(args, 1, name)[0]);
  if (name == "empty") return empty_graph(expect_args(args, 1, name)[0]);
  if (name == "cycle") return cycle_graph(expect_args(args, 1, name)[0]);
  if (name == "path") return path_graph(expect_args(args, 1, name)[0]);
  if (name == "clique_union") return clique_union(args);
  if (name == "clique_plus_isolated") {
    const auto a = expect_args(args, 2, name);
    return clique_plus_isolated(a[0], a[1]);
  }
  throw GraphError("unknown graph family '" + name + "'");
}

Graph parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  bool have_header = false;
  int n = 0;
  long declared_m = 0;
  long edge_lines = 0;
  std::vector<Edge> edges;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream iss(line);
    std::string tag;
    if (!(iss >> tag) || tag == "c") continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tag == "p") {
      if (have_header) throw GraphError(where + "duplicate problem line");
      std::string format;
      if (!(iss >> format >> n >> declared_m) || (format != "edge" && format != "col"))
        throw GraphError(where + "malformed problem line");
      if (n < 1) throw GraphError(where + "vertex count must be positive");
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw GraphError(where + "edge before problem line");
      int i = 0, j = 0;
      if (!(iss >> i >> j)) throw GraphError(where + "malformed edge line");
      if (i < 1 || j < 1 || i > n || j > n)
        throw GraphError(where + "vertex index outside 1.." + std::to_string(n));
      if (i == j) throw GraphError(where + "self-loop on vertex " + std::to_string(i));
      edges.emplace_back(i - 1, j - 1);
      ++edge_lines;
    } else {
      throw GraphError(where + "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw GraphError("missing 'p edge' problem line");
  Graph g(n, edges);
  if (warnings && edge_lines != declared_m)
    warnings->push_back("header declares " + std::to_string(declared_m) +
                        " edges, found " + std::to_string(edge_lines) + " edge lines");
  if (warnings && g.num_edges() != edge_lines)
    warnings->push_back(std::to_string(edge_lines - g.num_edges()) +
                        " duplicate edge line(s) ignored");
  return g;
}

Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, warnings);
}

Graph read_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return parse_dimacs(in, warnings);
}

void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  write_dimacs(out, g);
  return out.str();
}

}  // namespace ptheta
