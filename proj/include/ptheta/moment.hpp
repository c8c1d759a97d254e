#pragma once

#include "ptheta/conic.hpp"
#include "ptheta/graph.hpp"
#include "ptheta/theta.hpp"

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <vector>

namespace ptheta {

/// Number of multisets {i <= j <= l} over n symbols.
constexpr int tensor_storage_size(int n) { return n * (n + 1) * (n + 2) / 6; }

/// Dense offset of the multiset {i, j, l}; invariant under permutation.
/// Offsets enumerate sorted triples a <= b <= c by c, then b, then a.
int canonical_index(int i, int j, int l, int n);

/// Fully symmetric third-order tensor stored once per multiset.
template <typename Scalar>
class SymTensor3 {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit SymTensor3(int n = 0)
      : n_(n), values_(static_cast<std::size_t>(tensor_storage_size(n)), Scalar(0)) {}

  int size() const { return n_; }
  int free_entries() const { return static_cast<int>(values_.size()); }

  Scalar& operator()(int i, int j, int l) { return values_[canonical_index(i, j, l, n_)]; }
  const Scalar& operator()(int i, int j, int l) const {
    return values_[canonical_index(i, j, l, n_)];
  }

  /// (T_ijl)_{jl}
  Matrix slice(int i) const {
    Matrix s(n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int l = 0; l < n_; ++l) s(j, l) = (*this)(i, j, l);
    return s;
  }

  /// Sum of all slices.
  Matrix contraction() const {
    Matrix r = Matrix::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) r += slice(i);
    return r;
  }

  const std::vector<Scalar>& values() const { return values_; }

 private:
  int n_;
  std::vector<Scalar> values_;
};

struct MomentOptions {
  /// Drop tensor classes that touch a non-edge; otherwise keep them and add
  /// <slice_i, A_co-g> = 0 rows.
  bool eliminate_zero_pattern = true;
  /// Add the (implied) rows R 1 = 1 with R the sum of slices.
  bool explicit_row_sums = false;
};

inline constexpr int moment_vertex_guard = 30;

class MomentGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n PSD slices of size n tied to a shared nonnegative tensor storage in which
/// {i,i,j} and {i,j,j} are one class. Minimises the sum of slice traces subject
/// to <slice_i, J> = 1.
ConicProgram build_hat_theta_prime(const Graph& g, const MomentOptions& opt = {});

BoundValue hat_theta_prime(const Graph& g, const SolverConfig& cfg = {},
                           const MomentOptions& opt = {});

/// Slices of a build_hat_theta_prime solution.
std::vector<Eigen::MatrixXd> solution_slices(const ConicProgram& p, const Solution& s);

SymTensor3<double> tensor_from_slices(const std::vector<Eigen::MatrixXd>& slices);

struct MomentRecovery {
  Eigen::MatrixXd r;                     // sum of slices
  std::vector<Eigen::VectorXd> columns;  // r_i = slice_i 1
  double max_deviation = 0;              // max_i ||R e_i - r_i||_inf
};

MomentRecovery recover_projection(const std::vector<Eigen::MatrixXd>& slices);

}  // namespace ptheta
