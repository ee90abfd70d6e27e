// coralplus/linalg.cc

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

#include "coralplus/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "coralplus/error.h"

namespace coralplus {

SymMatrix::SymMatrix(const Matrix &m) {
  if (m.rows() != m.cols())
    throw PreconditionError("SymMatrix: matrix is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", not square");
  if (m.rows() < 1) throw PreconditionError("SymMatrix: empty matrix");
  const Eigen::Index n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index j = 0; j < n; j++) {
    m_(j, j) = m(j, j);
    for (Eigen::Index i = j + 1; i < n; i++) {
      double v = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
}

SymMatrix SymMatrix::Identity(int dim) {
  return SymMatrix(Matrix::Identity(dim, dim));
}

SymMatrix SymMatrix::Zero(int dim) { return SymMatrix(Matrix::Zero(dim, dim)); }

SymMatrix SymMatrix::Diagonal(const Vector &diag) {
  return SymMatrix(Matrix(diag.asDiagonal()));
}

SymMatrix SymMatrix::operator+(const SymMatrix &other) const {
  if (other.dim() != dim())
    throw PreconditionError("SymMatrix: dimension mismatch in addition");
  return SymMatrix(m_ + other.m_);
}

SymMatrix SymMatrix::operator-(const SymMatrix &other) const {
  if (other.dim() != dim())
    throw PreconditionError("SymMatrix: dimension mismatch in subtraction");
  return SymMatrix(m_ - other.m_);
}

SymMatrix SymMatrix::operator*(double scale) const {
  return SymMatrix(m_ * scale);
}

namespace {

double OffDiagonalNorm(const Matrix &a) {
  const Eigen::Index n = a.rows();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; j++)
    for (Eigen::Index i = j + 1; i < n; i++) sum += a(i, j) * a(i, j);
  return std::sqrt(2.0 * sum);
}

// One Jacobi rotation zeroing a(p, q); a is kept fully symmetric.
void Rotate(Matrix *a_ptr, Matrix *v_ptr, Eigen::Index p, Eigen::Index q) {
  Matrix &a = *a_ptr;
  Matrix &v = *v_ptr;
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  double *col_p = a.col(p).data();
  double *col_q = a.col(q).data();
  for (Eigen::Index k = 0; k < n; k++) {
    if (k == p || k == q) continue;
    const double akp = col_p[k], akq = col_q[k];
    const double new_kp = c * akp - s * akq;
    const double new_kq = s * akp + c * akq;
    col_p[k] = new_kp;
    col_q[k] = new_kq;
    a(p, k) = new_kp;
    a(q, k) = new_kq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  double *v_p = v.col(p).data();
  double *v_q = v.col(q).data();
  for (Eigen::Index k = 0; k < n; k++) {
    const double vkp = v_p[k], vkq = v_q[k];
    v_p[k] = c * vkp - s * vkq;
    v_q[k] = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition Eigh(const SymMatrix &m, std::string_view name) {
  const Eigen::Index n = m.dim();
  Matrix a = m.matrix();
  Matrix v = Matrix::Identity(n, n);
  const double tol = kJacobiTolerance * a.norm();
  auto sweep_once = [&]() {
    for (Eigen::Index p = 0; p + 1 < n; p++)
      for (Eigen::Index q = p + 1; q < n; q++) Rotate(&a, &v, p, q);
  };
  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; sweep++) {
    const double off = OffDiagonalNorm(a);
    if (off <= tol) {
      // Convergence is quadratic, so one more sweep takes the residual
      // from the tolerance down to roundoff; eigenvectors are otherwise
      // only accurate to about the tolerance itself.
      if (off > 0.0) sweep_once();
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    sweep_once();
  }
  if (!converged)
    throw ConvergenceError("eigh: Jacobi iteration on " + std::string(name) +
                           " did not converge in " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) {
                     return a(i, i) > a(j, j);
                   });
  EigenDecomposition result{Matrix(n, n), Vector(n)};
  for (Eigen::Index k = 0; k < n; k++) {
    result.values(k) = a(order[k], order[k]);
    auto col = result.vectors.col(k);
    col = v.col(order[k]);
    for (Eigen::Index i = 0; i < n; i++) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  return result;
}

namespace {

// Validates PSD-ness and returns lambda_max.
double CheckPsd(const EigenDecomposition &ed, std::string_view what) {
  const double lmax = ed.values(0);
  if (!(lmax > 0.0))
    throw DegenerateMatrixError(std::string(what) +
                                ": largest eigenvalue is not positive");
  const double lmin = ed.values(ed.values.size() - 1);
  if (lmin < -kPsdTolerance * lmax)
    throw DegenerateMatrixError(std::string(what) +
                                ": matrix is not positive semi-definite "
                                "(eigenvalue " + std::to_string(lmin) + ")");
  return lmax;
}

template <typename F>
SymMatrix SpectralFunction(const EigenDecomposition &ed, double floor_value,
                           F f) {
  Vector d = ed.values.unaryExpr(
      [floor_value, &f](double l) { return f(std::max(l, floor_value)); });
  return SymMatrix(ed.vectors * d.asDiagonal() * ed.vectors.transpose());
}

}  // namespace

SymMatrix SqrtPsd(const SymMatrix &m, double floor) {
  EigenDecomposition ed = Eigh(m, "sqrt_psd input");
  const double lmax = CheckPsd(ed, "sqrt_psd");
  return SpectralFunction(ed, std::max(floor * lmax, 0.0),
                          [](double l) { return std::sqrt(l); });
}

SymMatrix InvSqrtPsd(const SymMatrix &m, double floor) {
  EigenDecomposition ed = Eigh(m, "inv_sqrt_psd input");
  const double lmax = CheckPsd(ed, "inv_sqrt_psd");
  const double floor_value = floor * lmax;
  if (!(ed.values.minCoeff() > 0.0 || floor_value > 0.0))
    throw DegenerateMatrixError("inv_sqrt_psd: singular matrix and no floor");
  return SpectralFunction(ed, floor_value,
                          [](double l) { return 1.0 / std::sqrt(l); });
}

SimDiagResult SimDiag(const SymMatrix &phi, const SymMatrix &psi,
                      double floor) {
  if (phi.dim() != psi.dim())
    throw PreconditionError("simdiag: phi is " + std::to_string(phi.dim()) +
                            "-dimensional but psi is " +
                            std::to_string(psi.dim()));
  EigenDecomposition first = Eigh(phi, "simdiag phi");
  const double lmax = CheckPsd(first, "simdiag phi");
  Vector lambda = first.values.cwiseMax(floor * lmax);
  if (!(lambda.minCoeff() > 0.0))
    throw DegenerateMatrixError("simdiag: phi is singular after flooring");
  Matrix whiten = first.vectors * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
  SymMatrix s(whiten.transpose() * psi.matrix() * whiten);
  EigenDecomposition second = Eigh(s, "simdiag whitened psi");
  SimDiagResult result;
  result.b = whiten * second.vectors;
  result.b_inv = second.vectors.transpose() * lambda.cwiseSqrt().asDiagonal() *
                 first.vectors.transpose();
  result.e = second.values;
  return result;
}

namespace {

EigenDecomposition CheckedSpd(const SymMatrix &m, std::string_view what) {
  EigenDecomposition ed = Eigh(m, what);
  const double lmax = ed.values(0);
  const double lmin = ed.values(ed.values.size() - 1);
  if (!(lmax > 0.0) || !(lmin > 1e-14 * lmax))
    throw DegenerateMatrixError(std::string(what) + ": matrix is singular");
  return ed;
}

}  // namespace

double LogDetPsd(const SymMatrix &m) {
  EigenDecomposition ed = CheckedSpd(m, "log_det_psd");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ed.values.size(); i++)
    sum += std::log(ed.values(i));
  return sum;
}

Vector SolvePsd(const SymMatrix &m, const Vector &v) {
  if (v.size() != m.dim())
    throw PreconditionError("solve_psd: vector length " +
                            std::to_string(v.size()) + " != matrix dim " +
                            std::to_string(m.dim()));
  EigenDecomposition ed = CheckedSpd(m, "solve_psd");
  Vector y = ed.vectors.transpose() * v;
  y.array() /= ed.values.array();
  return ed.vectors * y;
}

SymMatrix InversePsd(const SymMatrix &m, std::string_view name) {
  EigenDecomposition ed = CheckedSpd(m, name);
  return SymMatrix(ed.vectors * ed.values.cwiseInverse().asDiagonal() *
                   ed.vectors.transpose());
}

SymMatrix FloorEigenvalues(const SymMatrix &m, double rel_floor,
                           std::string_view name) {
  EigenDecomposition ed = Eigh(m, name);
  const double lmax = ed.values(0);
  if (!(lmax > 0.0))
    throw DegenerateMatrixError(std::string(name) +
                                ": largest eigenvalue is not positive");
  const double floor_value = rel_floor * lmax;
  if (ed.values.minCoeff() >= floor_value) return m;
  return SpectralFunction(ed, floor_value, [](double l) { return l; });
}

SymMatrix Congruence(const Matrix &a, const SymMatrix &m) {
  if (a.cols() != m.dim() || a.rows() != a.cols())
    throw PreconditionError("congruence: dimension mismatch");
  return SymMatrix(a * m.matrix() * a.transpose());
}

}  // namespace coralplus
