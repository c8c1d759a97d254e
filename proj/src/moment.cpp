#include "ptheta/moment.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace ptheta {

int canonical_index(int i, int j, int l, int n) {
  if (i < 0 || j < 0 || l < 0 || i >= n || j >= n || l >= n)
    throw std::out_of_range("tensor index out of range");
  std::array<int, 3> t{i, j, l};
  std::sort(t.begin(), t.end());
  const auto [a, b, c] = t;
  return c * (c + 1) * (c + 2) / 6 + b * (b + 1) / 2 + a;
}

namespace {

// Class of a multiset under {i,i,j} ~ {i,j,j}: the set of distinct symbols.
std::array<int, 3> tensor_class(int i, int j, int l) {
  std::array<int, 3> t{i, j, l};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] && t[1] != t[2]) return {t[0], t[2], -1};
  if (t[1] == t[2] && t[0] != t[1]) return {t[0], t[2], -1};
  if (t[0] == t[2]) return {t[0], -1, -1};
  return t;
}

bool touches_non_edge(const Graph& g, int i, int j, int l) {
  auto bad = [&g](int a, int b) { return a != b && !g.has_edge(a, b); };
  return bad(i, j) || bad(i, l) || bad(j, l);
}

}  // namespace

ConicProgram build_hat_theta_prime(const Graph& g, const MomentOptions& opt) {
  const int n = g.num_vertices();
  if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
  ProgramBuilder pb;
  for (int i = 0; i < n; ++i) pb.add_psd_block(n);

  std::map<std::array<int, 3>, int> classes;
  auto class_var = [&](int i, int j, int l) {
    const auto key = tensor_class(i, j, l);
    auto it = classes.find(key);
    if (it == classes.end()) it = classes.emplace(key, pb.add_nonneg()).first;
    return it->second;
  };

  for (int i = 0; i < n; ++i) {
    const std::string s = std::to_string(i + 1);
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) {
        const std::string label = "slice " + s + " (" + std::to_string(j + 1) + "," + std::to_string(l + 1) + ")";
        if (opt.eliminate_zero_pattern && touches_non_edge(g, i, j, l)) {
          pb.add_entry(pb.add_row(0.0, label + " zero"), i, j, l, 1.0);
          continue;
        }
        const int row = pb.add_row(0.0, label + " link");
        pb.add_entry(row, i, j, l, 1.0);
        pb.add_nonneg_term(row, class_var(i, j, l), -1.0);
      }
    const int norm = pb.add_row(1.0, "slice " + s + " normalisation");
    for (int j = 0; j < n; ++j) {
      pb.add_objective_entry(i, j, j, 1.0);
      for (int l = 0; l < n; ++l) pb.add_entry(norm, i, j, l, 1.0);
    }
    if (!opt.eliminate_zero_pattern) {
      const int row = pb.add_row(0.0, "slice " + s + " orthogonality");
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (j != l && !g.has_edge(j, l)) pb.add_entry(row, i, j, l, 1.0);
    }
  }
  if (opt.explicit_row_sums)
    for (int j = 0; j < n; ++j) {
      const int row = pb.add_row(1.0, "rowsum " + std::to_string(j + 1));
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) pb.add_entry(row, i, j, l, 1.0);
    }
  return pb.build(Sense::minimize, "theta_hat_prime");
}

BoundValue hat_theta_prime(const Graph& g, const SolverConfig& cfg, const MomentOptions& opt) {
  if (g.num_vertices() > moment_vertex_guard)
    throw MomentGuardExceeded("theta_hat_prime is limited to " + std::to_string(moment_vertex_guard) +
                              " vertices");
  cfg.validate();
  return solve_bound(BoundKind::theta_hat_prime, g, build_hat_theta_prime(g, opt), cfg);
}

std::vector<Eigen::MatrixXd> solution_slices(const ConicProgram& p, const Solution& s) {
  std::vector<Eigen::MatrixXd> out;
  for (int b = 0; b < p.cone.num_blocks(); ++b) out.push_back(p.cone.block(s.x, b));
  return out;
}

SymTensor3<double> tensor_from_slices(const std::vector<Eigen::MatrixXd>& slices) {
  const int n = static_cast<int>(slices.size());
  SymTensor3<double> t(n);
  for (int c = 0; c < n; ++c)
    for (int b = 0; b <= c; ++b)
      for (int a = 0; a <= b; ++a) t(a, b, c) = slices[a](b, c);
  return t;
}

MomentRecovery recover_projection(const std::vector<Eigen::MatrixXd>& slices) {
  const int n = static_cast<int>(slices.size());
  MomentRecovery out;
  out.r = Eigen::MatrixXd::Zero(n, n);
  for (const auto& s : slices) out.r += s;
  for (int i = 0; i < n; ++i) {
    out.columns.push_back(slices[i].rowwise().sum());
    out.max_deviation = std::max(out.max_deviation, (out.r.col(i) - out.columns.back()).lpNorm<Eigen::Infinity>());
  }
  return out;
}

}  // namespace ptheta
