#pragma once

#include <Eigen/Core>

#include <cmath>

namespace ptheta {

// Scaled symmetric vectorisation: lower triangle, column-major, off-diagonal
// entries multiplied by sqrt(2) so that <X, Y> = svec(X) . svec(Y).

constexpr int svec_size(int s) { return s * (s + 1) / 2; }

/// Offset of entry (i, j) of an s x s symmetric matrix; order of i, j is free.
constexpr int svec_index(int s, int i, int j) {
  if (i < j) {
    const int t = i;
    i = j;
    j = t;
  }
  return j * s - j * (j - 1) / 2 + (i - j);
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> svec(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const int s = static_cast<int>(x.rows());
  const Scalar root2 = Scalar(std::sqrt(2.0));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(svec_size(s));
  int k = 0;
  for (int j = 0; j < s; ++j) {
    v(k++) = x(j, j);
    for (int i = j + 1; i < s; ++i) v(k++) = root2 * Scalar(0.5) * (x(i, j) + x(j, i));
  }
  return v;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> smat(
    const Eigen::MatrixBase<Derived>& v, int s) {
  using Scalar = typename Derived::Scalar;
  const Scalar inv_root2 = Scalar(1.0 / std::sqrt(2.0));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x(s, s);
  int k = 0;
  for (int j = 0; j < s; ++j) {
    x(j, j) = v(k++);
    for (int i = j + 1; i < s; ++i) x(i, j) = x(j, i) = inv_root2 * v(k++);
  }
  return x;
}

/// Matrix of the map svec(U) -> svec(P U P) for symmetric P (the symmetric
/// Kronecker product P (x)_s P).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> symmetric_kron(
    const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const int s = static_cast<int>(p.rows());
  const Scalar root2 = Scalar(std::sqrt(2.0));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(svec_size(s), svec_size(s));
  int col = 0;
  for (int l = 0; l < s; ++l) {
    for (int k = l; k < s; ++k, ++col) {
      int row = 0;
      for (int j = 0; j < s; ++j) {
        for (int i = j; i < s; ++i, ++row) {
          Scalar v;
          if (i == j && k == l)
            v = p(i, k) * p(i, k);
          else if (i == j)
            v = root2 * p(i, k) * p(i, l);
          else if (k == l)
            v = root2 * p(i, k) * p(j, k);
          else
            v = p(i, k) * p(j, l) + p(i, l) * p(j, k);
          out(row, col) = v;
        }
      }
    }
  }
  return out;
}

}  // namespace ptheta
