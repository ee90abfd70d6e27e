// coralplus/linalg.h

// Copyright 2026  The coralplus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CORALPLUS_LINALG_H_
#define CORALPLUS_LINALG_H_

#include <string_view>

#include <Eigen/Dense>

namespace coralplus {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default relative eigenvalue floor applied before inverting a PSD matrix:
/// eigenvalues below floor * lambda_max are raised to that value.
inline constexpr double kDefaultEigFloor = 1e-10;

/// Eigenvalues down to -kPsdTolerance * lambda_max are accepted as roundoff
/// when a positive semi-definite input is required.
inline constexpr double kPsdTolerance = 1e-10;

/// Jacobi stopping rule: off-diagonal Frobenius norm below this fraction of
/// the input's Frobenius norm.
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// A real symmetric matrix.  The constructor symmetrizes its argument as
/// (M + M^T) / 2, so entries(i, j) == entries(j, i) holds exactly.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix &m);

  static SymMatrix Identity(int dim);
  static SymMatrix Zero(int dim);
  static SymMatrix Diagonal(const Vector &diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix &matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix &other) const;
  SymMatrix operator-(const SymMatrix &other) const;
  SymMatrix operator*(double scale) const;

 private:
  Matrix m_;
};

/// Columns of `vectors` are orthonormal eigenvectors; `values` are sorted in
/// descending order.  The first component of each eigenvector whose
/// magnitude exceeds 1e-12 is positive.
struct EigenDecomposition {
  Matrix vectors;
  Vector values;
};

/// b^T phi b = I, b^T psi b = diag(e), b * b_inv = I.
struct SimDiagResult {
  Matrix b;
  Matrix b_inv;
  Vector e;
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.  Throws
/// ConvergenceError naming `name` if kJacobiMaxSweeps sweeps do not suffice.
/// The result is a deterministic function of the input.
EigenDecomposition Eigh(const SymMatrix &m, std::string_view name = "matrix");

/// ZCA square root Q max(L, floor * l_max)^{1/2} Q^T.
SymMatrix SqrtPsd(const SymMatrix &m, double floor = 0.0);

/// ZCA inverse square root Q max(L, floor * l_max)^{-1/2} Q^T.
SymMatrix InvSqrtPsd(const SymMatrix &m, double floor = kDefaultEigFloor);

/// Simultaneous diagonalization of an SPD `phi` and a PSD `psi` by two
/// eigendecompositions: whiten with phi's spectrum, then rotate onto the
/// eigenbasis of the whitened psi.  `e` comes out in descending order.
SimDiagResult SimDiag(const SymMatrix &phi, const SymMatrix &psi,
                      double floor = kDefaultEigFloor);

/// Log-determinant of an SPD matrix.
double LogDetPsd(const SymMatrix &m);

/// Solves m x = v for SPD m.
Vector SolvePsd(const SymMatrix &m, const Vector &v);

/// Inverse of an SPD matrix via its eigendecomposition.
SymMatrix InversePsd(const SymMatrix &m, std::string_view name = "matrix");

/// Raises eigenvalues below rel_floor * l_max to that value.  Returns the
/// input unchanged when no eigenvalue needs raising.  Throws
/// DegenerateMatrixError when l_max <= 0.
SymMatrix FloorEigenvalues(const SymMatrix &m, double rel_floor,
                           std::string_view name = "matrix");

/// a * m * a^T.
SymMatrix Congruence(const Matrix &a, const SymMatrix &m);

}  // namespace coralplus

#endif  // CORALPLUS_LINALG_H_
