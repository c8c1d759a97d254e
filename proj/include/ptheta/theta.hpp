#pragma once

#include "ptheta/conic.hpp"
#include "ptheta/graph.hpp"
#include "ptheta/rational.hpp"

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptheta {

// Theta-type bounds. Throughout, bounds for the chromatic number of a graph H
// are evaluated at complement(H): omega(H) <= theta_minus(co-H) <= theta(co-H)
// <= theta_plus(co-H) <= chi(H), and theta_hat(co-H) <= chi(H).

enum class BoundKind { theta, theta_minus, theta_plus, theta_hat, theta_hat_prime };

std::string to_string(BoundKind k);
/// Accepts the canonical names and the short CLI forms theta, theta-, theta+,
/// that, that'.
BoundKind parse_bound_kind(std::string_view s);
/// Short CLI form of a kind.
std::string short_name(BoundKind k);

struct BoundValue {
  BoundKind kind = BoundKind::theta;
  double value = 0;
  Solution solution;
  ResidualReport residuals;
  std::string graph_fingerprint;
};

class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, SolveStatus status)
      : std::runtime_error(what), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

/// "n<vertices>-m<edges>-<fnv1a hash of the edge list>"
std::string fingerprint(const Graph& g);

/// max <J, X> s.t. tr X = 1, X_ij = 0 on edges of g, X psd.
ConicProgram build_theta_primal(const Graph& g);
/// min k s.t. [[k, 1^T], [1, Y]] psd, diag Y = 1, Y_ij = 0 on non-edges of g.
ConicProgram build_theta_dual(const Graph& g);
/// Primal theta with X >= 0.
ConicProgram build_theta_minus(const Graph& g);
/// Dual theta with Y >= 0.
ConicProgram build_theta_plus(const Graph& g);
/// min tr R s.t. R psd, R 1 = 1, R_ij = 0 on non-edges of g, R >= 0.
ConicProgram build_hat_theta(const Graph& g);

ConicProgram build_program(BoundKind kind, const Graph& g);

/// Solves a built program and packages the value. Throws SolverFailure unless
/// the solver reports an optimal point.
BoundValue solve_bound(BoundKind kind, const Graph& g, const ConicProgram& p,
                       const SolverConfig& cfg);

BoundValue eval_bound(BoundKind kind, const Graph& g, const SolverConfig& cfg = {});

/// Packs a candidate matrix R (plus the orthant slacks it implies) into the
/// variable vector of build_hat_theta(g).
Eigen::VectorXd hat_theta_point(const Graph& g, const Eigen::MatrixXd& r);

/// The n x n matrix part of a theta_plus / theta_minus / theta_hat solution.
Eigen::MatrixXd solution_matrix(BoundKind kind, const ConicProgram& p, const Solution& s);

// Two-clique family K_{n1} u K_{n2}, evaluated at the complement.

struct TwoCliqueCertificate {
  int n1 = 0;
  int n2 = 0;
  Rational alpha, beta, gamma;
  Rational value;

  /// [[alpha I, beta J], [beta J, gamma I]]
  RationalMatrix matrix() const;
};

TwoCliqueCertificate two_clique_closed_form(int n1, int n2);

/// max(n1, n2) - (n1^2 + n2^2) / (n1 + n2), exactly.
Rational worst_case_gap(int n1, int n2);

struct GapAsymptotics {
  double optimal_ratio;       // sqrt(2) - 1
  double gap_per_clique;      // 3 - 2 sqrt(2): max over ratio of gap(m, ratio m) / m
  double relative_gap_limit;  // (3 - 2 sqrt(2)) / sqrt(2): gap per vertex
};

GapAsymptotics worst_case_gap_asymptotics();

// Symmetric diagonal scaling.

template <typename Scalar>
struct DiagonalScaling {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> r;  // diag(d) x diag(d)
  int iterations = 0;
};

class ScalingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finds d > 0 with diag(d) x diag(d) doubly stochastic for symmetric,
/// entrywise nonnegative x with unit diagonal, by the symmetric iteration
/// d <- d / sqrt(row sums).
template <typename Derived>
DiagonalScaling<typename Derived::Scalar> sinkhorn_feasible_point(
    const Eigen::MatrixBase<Derived>& x, double tol = 1e-12, int max_iterations = 10000) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x.rows();
  if (x.cols() != n) throw ScalingError("matrix must be square");
  if (!x.isApprox(x.transpose())) throw ScalingError("matrix must be symmetric");
  if ((x.array() < Scalar(0)).any()) throw ScalingError("matrix must be nonnegative");
  if (((x.diagonal().array() - Scalar(1)).abs() > Scalar(1e-9)).any())
    throw ScalingError("matrix must have unit diagonal");

  DiagonalScaling<Scalar> out;
  out.d = Vec::Ones(n);
  for (int it = 0; it <= max_iterations; ++it) {
    const Vec sums = out.d.cwiseProduct(x * out.d);
    if ((sums.array() - Scalar(1)).abs().maxCoeff() <= Scalar(tol)) {
      out.iterations = it;
      out.r = out.d.asDiagonal() * x * out.d.asDiagonal();
      return out;
    }
    out.d = out.d.cwiseQuotient(sums.cwiseSqrt());
  }
  throw ScalingError("diagonal scaling did not converge");
}

}  // namespace ptheta
