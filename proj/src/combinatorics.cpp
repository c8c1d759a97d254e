#include "ptheta/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ptheta {

namespace {

void check_guard(const Graph& g, int guard, const char* what) {
  if (g.num_vertices() > guard)
    throw GuardExceeded(std::string(what) + ": n = " + std::to_string(g.num_vertices()) +
                        " exceeds enumeration guard " + std::to_string(guard));
}

std::string vertex_label(int v) { return std::to_string(v + 1); }

}  // namespace

int Partition::num_vertices() const {
  int n = 0;
  for (const auto& p : parts) n += static_cast<int>(p.size());
  return n;
}

Partition normalized(Partition p) {
  for (auto& part : p.parts) std::sort(part.begin(), part.end());
  std::sort(p.parts.begin(), p.parts.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return p;
}

bool is_partition_of(const Partition& p, int n) {
  std::vector<int> seen(n, 0);
  for (const auto& part : p.parts) {
    if (part.empty()) return false;
    for (int v : part) {
      if (v < 0 || v >= n || seen[v]++) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

bool is_stable(const Graph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (g.has_edge(s[a], s[b])) return false;
  return true;
}

bool is_colouring(const Graph& g, const Partition& p) {
  return is_partition_of(p, g.num_vertices()) &&
         std::all_of(p.parts.begin(), p.parts.end(),
                     [&](const VertexSet& s) { return is_stable(g, s); });
}

AssignmentMatrix::AssignmentMatrix(Eigen::MatrixXi u) : u_(std::move(u)) {
  if ((u_.array() != 0 && u_.array() != 1).any())
    throw std::invalid_argument("assignment matrix must be binary");
  if ((u_.rowwise().sum().array() != 1).any())
    throw std::invalid_argument("assignment matrix rows must sum to 1");
  if ((u_.colwise().sum().array() == 0).any())
    throw std::invalid_argument("assignment matrix has a zero column");
}

AssignmentMatrix AssignmentMatrix::from_partition(const Partition& p) {
  const int n = p.num_vertices();
  if (!is_partition_of(p, n)) throw std::invalid_argument("not a partition");
  Eigen::MatrixXi u = Eigen::MatrixXi::Zero(n, p.size());
  for (int c = 0; c < p.size(); ++c)
    for (int v : p.parts[c]) u(v, c) = 1;
  return AssignmentMatrix(std::move(u));
}

Partition AssignmentMatrix::column_partition() const {
  Partition p;
  for (int c = 0; c < cols(); ++c) {
    VertexSet part;
    for (int v = 0; v < rows(); ++v)
      if (u_(v, c)) part.push_back(v);
    p.parts.push_back(std::move(part));
  }
  return normalized(std::move(p));
}

std::vector<VertexSet> enumerate_stable_sets(const Graph& g, int guard) {
  check_guard(g, guard, "enumerate_stable_sets");
  const int n = g.num_vertices();
  std::vector<VertexSet> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    VertexSet s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1ul) s.push_back(v);
    if (is_stable(g, s)) out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

AlphaResult alpha_exact(const Graph& g, int guard) {
  const auto sets = enumerate_stable_sets(g, guard);
  AlphaResult best;
  for (const auto& s : sets) {
    if (static_cast<int>(s.size()) > best.value) {
      best.value = static_cast<int>(s.size());
      best.witness = s;
    }
  }
  return best;
}

AlphaResult omega_exact(const Graph& g, int guard) {
  return alpha_exact(complement(g), guard);
}

namespace {

class ColouringSearch {
 public:
  explicit ColouringSearch(const Graph& g) : g_(g), n_(g.num_vertices()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    colour_.assign(n_, -1);
  }

  ChiResult run() {
    greedy();
    colour_.assign(n_, -1);
    branch(0, 0);
    ChiResult out;
    out.value = best_;
    Partition p;
    p.parts.resize(best_);
    for (int v = 0; v < n_; ++v) p.parts[best_colour_[v]].push_back(v);
    out.witness = normalized(std::move(p));
    return out;
  }

 private:
  bool fits(int v, int c) const {
    for (int u = 0; u < n_; ++u)
      if (colour_[u] == c && g_.has_edge(u, v)) return false;
    return true;
  }

  void greedy() {
    int used = 0;
    for (int v : order_) {
      int c = 0;
      while (!fits(v, c)) ++c;
      colour_[v] = c;
      used = std::max(used, c + 1);
    }
    best_ = used;
    best_colour_ = colour_;
  }

  void branch(int depth, int used) {
    if (used >= best_) return;
    if (depth == n_) {
      best_ = used;
      best_colour_ = colour_;
      return;
    }
    const int v = order_[depth];
    for (int c = 0; c <= used; ++c) {
      const int next_used = std::max(used, c + 1);
      if (next_used >= best_ || !fits(v, c)) continue;
      colour_[v] = c;
      branch(depth + 1, next_used);
      colour_[v] = -1;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> order_;
  std::vector<int> colour_;
  std::vector<int> best_colour_;
  int best_ = 0;
};

}  // namespace

ChiResult chi_exact(const Graph& g, int guard) {
  check_guard(g, guard, "chi_exact");
  if (g.num_vertices() == 0) return {};
  return ColouringSearch(g).run();
}

RationalMatrix rho(const AssignmentMatrix& u) {
  const Eigen::MatrixXi& m = u.matrix();
  const Eigen::VectorXi sizes = m.colwise().sum().transpose();
  const int n = u.rows();
  RationalMatrix r = RationalMatrix::Constant(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < u.cols(); ++c)
        if (m(i, c) && m(j, c)) r(i, j) = make_rational(1, sizes(c));
  return r;
}

ProjectionCheck is_combinatorial_projection(const RationalMatrix& r, const Graph& g) {
  const int n = g.num_vertices();
  if (r.rows() != r.cols() || r.rows() != n)
    throw std::invalid_argument("matrix dimension does not match graph");

  for (int i = 0; i < n; ++i) {
    Rational sum = 0;
    for (int j = 0; j < n; ++j) {
      if (r(j, i) < 0)
        return {false, "column " + vertex_label(i) + " has a negative entry"};
      sum += r(j, i);
    }
    if (sum != 1) return {false, "column " + vertex_label(i) + " does not sum to 1"};
  }
  for (int i = 0; i < n; ++i) {
    VertexSet support;
    for (int j = 0; j < n; ++j)
      if (r(j, i) != 0) support.push_back(j);
    if (!is_stable(g, support))
      return {false, "support of column " + vertex_label(i) + " is not a stable set"};
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (r(i, j) != 0 && r.col(i) != r.col(j))
        return {false, "block-inducing equation fails for columns " + vertex_label(i) +
                           " and " + vertex_label(j)};
  if (r != r.transpose()) return {false, "matrix is not symmetric"};
  const Rational trace = r.trace();
  if (trace.get_den() != 1) return {false, "trace is not an integer"};
  return {true, ""};
}

Partition psi(const RationalMatrix& r) {
  const auto check = is_combinatorial_projection(r, Graph(static_cast<int>(r.rows())));
  if (!check) throw std::invalid_argument("psi: " + check.diagnostic);
  std::set<VertexSet> supports;
  for (Eigen::Index i = 0; i < r.cols(); ++i) {
    VertexSet s;
    for (Eigen::Index j = 0; j < r.rows(); ++j)
      if (r(j, i) != 0) s.push_back(static_cast<int>(j));
    supports.insert(std::move(s));
  }
  return normalized(Partition{{supports.begin(), supports.end()}});
}

namespace {

void extend_partitions(const Graph& g, int v, Partition& current,
                       std::vector<Partition>& out) {
  if (v == g.num_vertices()) {
    out.push_back(current);
    return;
  }
  for (std::size_t k = 0; k < current.parts.size(); ++k) {
    const VertexSet& part = current.parts[k];
    if (std::none_of(part.begin(), part.end(), [&](int u) { return g.has_edge(u, v); })) {
      current.parts[k].push_back(v);
      extend_partitions(g, v + 1, current, out);
      current.parts[k].pop_back();
    }
  }
  current.parts.push_back({v});
  extend_partitions(g, v + 1, current, out);
  current.parts.pop_back();
}

}  // namespace

std::vector<Partition> enumerate_stable_partitions(const Graph& g, int guard) {
  check_guard(g, guard, "enumerate_stable_partitions");
  std::vector<Partition> out;
  Partition current;
  extend_partitions(g, 0, current, out);
  return out;
}

ProjectionChiResult chi_via_projection(const Graph& g, int guard) {
  const auto partitions = enumerate_stable_partitions(g, guard);
  ProjectionChiResult best;
  best.value = -1;
  for (const auto& p : partitions) {
    const RationalMatrix r = rho(AssignmentMatrix::from_partition(p));
    ++best.partitions_checked;
    if (!is_combinatorial_projection(r, g)) continue;
    const Rational trace = r.trace();
    const int k = static_cast<int>(trace.get_num().get_si());
    if (best.value < 0 || k < best.value) {
      best.value = k;
      best.witness = p;
    }
  }
  return best;
}

std::vector<AssignmentMatrix> enumerate_assignment_matrices(const Graph& g, int k,
                                                            int guard) {
  const int n = g.num_vertices();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in 1..n");
  std::vector<AssignmentMatrix> out;
  for (const auto& p : enumerate_stable_partitions(g, guard)) {
    if (p.size() != k) continue;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Eigen::MatrixXi u = Eigen::MatrixXi::Zero(n, k);
      for (int c = 0; c < k; ++c)
        for (int v : p.parts[perm[c]]) u(v, c) = 1;
      out.emplace_back(std::move(u));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

namespace {

bool extend_automorphism(const Graph& g, std::vector<int>& image, std::vector<char>& used,
                         int v) {
  const int n = g.num_vertices();
  if (v == n) return true;
  if (image[v] >= 0) return extend_automorphism(g, image, used, v + 1);
  for (int t = 0; t < n; ++t) {
    if (used[t] || g.degree(t) != g.degree(v)) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      if (image[u] >= 0 && u != v) ok = g.has_edge(u, v) == g.has_edge(image[u], t);
    if (!ok) continue;
    image[v] = t;
    used[t] = 1;
    if (extend_automorphism(g, image, used, v + 1)) return true;
    image[v] = -1;
    used[t] = 0;
  }
  return false;
}

}  // namespace

bool is_vertex_transitive_small(const Graph& g, int guard) {
  check_guard(g, guard, "is_vertex_transitive_small");
  const int n = g.num_vertices();
  for (int t = 1; t < n; ++t) {
    if (g.degree(t) != g.degree(0)) return false;
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    image[0] = t;
    used[t] = 1;
    if (!extend_automorphism(g, image, used, 1)) return false;
  }
  return true;
}

}  // namespace ptheta
