#pragma once

#include "ptheta/graph.hpp"
#include "ptheta/rational.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace ptheta {

// Exact, enumeration-based oracles. Everything here is pure and uses either
// integer or rational arithmetic.

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationGuards {
  int stable_sets = 20;
  int chromatic = 12;
  int partitions = 8;
  int transitivity = 9;
};

using VertexSet = std::vector<int>;  // sorted, 0-based

/// Disjoint nonempty stable-or-not vertex sets covering 0..n-1. Normalised so
/// each part is sorted and parts are ordered by their minimum element.
struct Partition {
  std::vector<VertexSet> parts;

  int size() const { return static_cast<int>(parts.size()); }
  int num_vertices() const;
  bool operator==(const Partition&) const = default;
};

Partition normalized(Partition p);
bool is_partition_of(const Partition& p, int n);
bool is_stable(const Graph& g, const VertexSet& s);
bool is_colouring(const Graph& g, const Partition& p);

/// n x k binary matrix with unit row sums and no zero column.
class AssignmentMatrix {
 public:
  explicit AssignmentMatrix(Eigen::MatrixXi u);
  static AssignmentMatrix from_partition(const Partition& p);

  const Eigen::MatrixXi& matrix() const { return u_; }
  int rows() const { return static_cast<int>(u_.rows()); }
  int cols() const { return static_cast<int>(u_.cols()); }
  Partition column_partition() const;
  bool operator==(const AssignmentMatrix& o) const { return u_ == o.u_; }

 private:
  Eigen::MatrixXi u_;
};

/// All stable sets including the empty set, ordered by size and then
/// lexicographically.
std::vector<VertexSet> enumerate_stable_sets(const Graph& g, int guard = 20);

struct AlphaResult {
  int value = 0;
  VertexSet witness;
};

AlphaResult alpha_exact(const Graph& g, int guard = 20);
/// Clique number, computed as alpha of the complement.
AlphaResult omega_exact(const Graph& g, int guard = 20);

struct ChiResult {
  int value = 0;
  Partition witness;
};

/// Branch and bound over colour assignments in descending-degree order, seeded
/// with a greedy upper bound.
ChiResult chi_exact(const Graph& g, int guard = 12);

/// X (X^T X)^{-1} X^T for an assignment matrix. Entry (i, j) is 1/|T_c| when
/// rows i and j share column c, else 0.
RationalMatrix rho(const AssignmentMatrix& u);

struct ProjectionCheck {
  bool ok = false;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Checks, in order: columns lie in the simplex, column supports are stable in
/// g, block-inducing equations r_ij (r_i - r_j) = 0, symmetry, integral trace.
/// Throws std::invalid_argument on dimension mismatch.
ProjectionCheck is_combinatorial_projection(const RationalMatrix& r, const Graph& g);

/// Parts are the distinct column supports. Throws std::invalid_argument if r
/// is not a combinatorial projection matrix (checked against the edgeless
/// graph, i.e. no stability requirement).
Partition psi(const RationalMatrix& r);

struct ProjectionChiResult {
  int value = 0;
  Partition witness;
  long partitions_checked = 0;
};

/// Minimum trace over rho-images of all stable-set partitions, each validated
/// by is_combinatorial_projection.
ProjectionChiResult chi_via_projection(const Graph& g, int guard = 8);

/// All stable-set partitions of g (any number of parts), normalised.
std::vector<Partition> enumerate_stable_partitions(const Graph& g, int guard = 8);

/// All n x k assignment matrices whose columns are stable sets of g, in every
/// column order.
std::vector<AssignmentMatrix> enumerate_assignment_matrices(const Graph& g, int k,
                                                            int guard = 8);

/// Brute-force automorphism search (vertex 0 mapped to every other vertex).
bool is_vertex_transitive_small(const Graph& g, int guard = 9);

}  // namespace ptheta
