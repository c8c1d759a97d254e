#include "ptheta/theta.hpp"

#include "ptheta/moment.hpp"
#include "ptheta/svec.hpp"

#include <cstdint>
#include <cstdio>

namespace ptheta {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::theta: return "theta";
    case BoundKind::theta_minus: return "theta_minus";
    case BoundKind::theta_plus: return "theta_plus";
    case BoundKind::theta_hat: return "theta_hat";
    case BoundKind::theta_hat_prime: return "theta_hat_prime";
  }
  return "unknown";
}

std::string short_name(BoundKind k) {
  switch (k) {
    case BoundKind::theta: return "theta";
    case BoundKind::theta_minus: return "theta-";
    case BoundKind::theta_plus: return "theta+";
    case BoundKind::theta_hat: return "that";
    case BoundKind::theta_hat_prime: return "that'";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view s) {
  for (BoundKind k : {BoundKind::theta, BoundKind::theta_minus, BoundKind::theta_plus,
                      BoundKind::theta_hat, BoundKind::theta_hat_prime})
    if (s == to_string(k) || s == short_name(k)) return k;
  throw std::invalid_argument("unknown bound kind '" + std::string(s) + "'");
}

std::string fingerprint(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](int v) {
    for (int k = 0; k < 4; ++k) {
      h ^= static_cast<std::uint64_t>((v >> (8 * k)) & 0xff);
      h *= 1099511628211ull;
    }
  };
  mix(g.num_vertices());
  for (const auto& [i, j] : g.edges()) {
    mix(i);
    mix(j);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "n" + std::to_string(g.num_vertices()) + "-m" + std::to_string(g.num_edges()) + "-" + buf;
}

namespace {

std::string pair_label(const char* what, int i, int j) {
  return std::string(what) + " " + std::to_string(i + 1) + "-" + std::to_string(j + 1);
}

void require_vertices(const Graph& g) {
  if (g.num_vertices() < 1) throw std::invalid_argument("graph must have at least one vertex");
}

void add_primal_rows(ProgramBuilder& pb, const Graph& g) {
  const int n = g.num_vertices();
  pb.add_psd_block(n);
  const int tr = pb.add_row(1.0, "trace");
  for (int i = 0; i < n; ++i) pb.add_entry(tr, 0, i, i, 1.0);
  for (const auto& [i, j] : g.edges()) pb.add_entry(pb.add_row(0.0, pair_label("edge", i, j)), 0, i, j, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pb.add_objective_entry(0, i, j, 1.0);
}

// Border at index 0, Y occupies indices 1..n.
void add_dual_rows(ProgramBuilder& pb, const Graph& g) {
  const int n = g.num_vertices();
  pb.add_psd_block(n + 1);
  pb.add_objective_entry(0, 0, 0, 1.0);
  for (int i = 0; i < n; ++i) pb.add_entry(pb.add_row(1.0, "border " + std::to_string(i + 1)), 0, 0, i + 1, 1.0);
  for (int i = 0; i < n; ++i) pb.add_entry(pb.add_row(1.0, "diag " + std::to_string(i + 1)), 0, i + 1, i + 1, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) pb.add_entry(pb.add_row(0.0, pair_label("zero", i, j)), 0, i + 1, j + 1, 1.0);
}

void link_nonneg(ProgramBuilder& pb, int block, int i, int j, int offset) {
  const int var = pb.add_nonneg();
  const int row = pb.add_row(0.0, pair_label("nonneg", i, j));
  pb.add_entry(row, block, i + offset, j + offset, 1.0);
  pb.add_nonneg_term(row, var, -1.0);
}

}  // namespace

ConicProgram build_theta_primal(const Graph& g) {
  require_vertices(g);
  ProgramBuilder pb;
  add_primal_rows(pb, g);
  return pb.build(Sense::maximize, "theta_primal");
}

ConicProgram build_theta_dual(const Graph& g) {
  require_vertices(g);
  ProgramBuilder pb;
  add_dual_rows(pb, g);
  return pb.build(Sense::minimize, "theta_dual");
}

ConicProgram build_theta_minus(const Graph& g) {
  require_vertices(g);
  ProgramBuilder pb;
  add_primal_rows(pb, g);
  const int n = g.num_vertices();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) link_nonneg(pb, 0, i, j, 0);
  return pb.build(Sense::maximize, "theta_minus");
}

ConicProgram build_theta_plus(const Graph& g) {
  require_vertices(g);
  ProgramBuilder pb;
  add_dual_rows(pb, g);
  for (const auto& [i, j] : g.edges()) link_nonneg(pb, 0, i, j, 1);
  return pb.build(Sense::minimize, "theta_plus");
}

ConicProgram build_hat_theta(const Graph& g) {
  require_vertices(g);
  const int n = g.num_vertices();
  ProgramBuilder pb;
  pb.add_psd_block(n);
  for (int i = 0; i < n; ++i) {
    const int row = pb.add_row(1.0, "rowsum " + std::to_string(i + 1));
    for (int j = 0; j < n; ++j) pb.add_entry(row, 0, i, j, 1.0);
    pb.add_objective_entry(0, i, i, 1.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) pb.add_entry(pb.add_row(0.0, pair_label("zero", i, j)), 0, i, j, 1.0);
  for (const auto& [i, j] : g.edges()) link_nonneg(pb, 0, i, j, 0);
  return pb.build(Sense::minimize, "theta_hat");
}

ConicProgram build_program(BoundKind kind, const Graph& g) {
  switch (kind) {
    case BoundKind::theta: return build_theta_primal(g);
    case BoundKind::theta_minus: return build_theta_minus(g);
    case BoundKind::theta_plus: return build_theta_plus(g);
    case BoundKind::theta_hat: return build_hat_theta(g);
    case BoundKind::theta_hat_prime: return build_hat_theta_prime(g);
  }
  throw std::invalid_argument("unknown bound kind");
}

BoundValue solve_bound(BoundKind kind, const Graph& g, const ConicProgram& p,
                       const SolverConfig& cfg) {
  BoundValue out;
  out.kind = kind;
  out.graph_fingerprint = fingerprint(g);
  out.solution = solve_conic(p, cfg);
  if (!out.solution.optimal())
    throw SolverFailure(to_string(kind) + ": solver returned " + to_string(out.solution.status),
                        out.solution.status);
  out.residuals = compute_residuals(p, out.solution);
  const double slack = 100.0;
  if (out.residuals.worst_feasibility() > slack * cfg.feasibility_tolerance ||
      out.residuals.relative_gap > slack * cfg.gap_tolerance)
    throw SolverFailure(to_string(kind) + ": residuals exceed tolerance",
                        SolveStatus::numerical_failure);
  out.value = out.solution.primal_objective;
  return out;
}

BoundValue eval_bound(BoundKind kind, const Graph& g, const SolverConfig& cfg) {
  cfg.validate();
  if (kind == BoundKind::theta_hat_prime) return hat_theta_prime(g, cfg);
  return solve_bound(kind, g, build_program(kind, g), cfg);
}

Eigen::VectorXd hat_theta_point(const Graph& g, const Eigen::MatrixXd& r) {
  const int n = g.num_vertices();
  if (r.rows() != n || r.cols() != n) throw std::invalid_argument("matrix size does not match graph");
  Eigen::VectorXd x(svec_size(n) + g.num_edges());
  x.head(svec_size(n)) = svec(r);
  int k = svec_size(n);
  for (const auto& [i, j] : g.edges()) x(k++) = r(i, j);
  return x;
}

Eigen::MatrixXd solution_matrix(BoundKind kind, const ConicProgram& p, const Solution& s) {
  const Eigen::MatrixXd block = p.cone.block(s.x, 0);
  if (kind == BoundKind::theta_plus) return block.bottomRightCorner(block.rows() - 1, block.cols() - 1);
  if (kind == BoundKind::theta_hat_prime)
    throw std::invalid_argument("use recover_matrix for theta_hat_prime solutions");
  return block;
}

RationalMatrix TwoCliqueCertificate::matrix() const {
  const int n = n1 + n2;
  RationalMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool a = i < n1, b = j < n1;
      if (a != b)
        r(i, j) = beta;
      else if (i == j)
        r(i, j) = a ? alpha : gamma;
      else
        r(i, j) = 0;
    }
  return r;
}

TwoCliqueCertificate two_clique_closed_form(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("clique sizes must be positive");
  TwoCliqueCertificate c;
  c.n1 = n1;
  c.n2 = n2;
  c.alpha = make_rational(n1, n1 + n2);
  c.beta = make_rational(1, n1 + n2);
  c.gamma = make_rational(n2, n1 + n2);
  c.value = make_rational(static_cast<long>(n1) * n1 + static_cast<long>(n2) * n2, n1 + n2);
  return c;
}

Rational worst_case_gap(int n1, int n2) {
  return Rational(std::max(n1, n2)) - two_clique_closed_form(n1, n2).value;
}

GapAsymptotics worst_case_gap_asymptotics() {
  const double r2 = std::sqrt(2.0);
  return {r2 - 1.0, 3.0 - 2.0 * r2, (3.0 - 2.0 * r2) / r2};
}

}  // namespace ptheta
