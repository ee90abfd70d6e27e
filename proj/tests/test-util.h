// Shared helpers for the test binaries.

#ifndef CORALPLUS_TESTS_TEST_UTIL_H_
#define CORALPLUS_TESTS_TEST_UTIL_H_

#include <cmath>
#include <random>
#include <string>

#include "coralplus/data.h"
#include "coralplus/linalg.h"

namespace coralplus {
namespace testing {

class Random {
 public:
  explicit Random(uint64_t seed) : engine_(seed) {}

  double Normal() { return normal_(engine_); }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  Matrix GaussianMatrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; j++)
      for (int i = 0; i < rows; i++) m(i, j) = Normal();
    return m;
  }

  Vector GaussianVector(int n) {
    Vector v(n);
    for (int i = 0; i < n; i++) v(i) = Normal();
    return v;
  }

  Matrix Orthogonal(int n) {
    Eigen::HouseholderQR<Matrix> qr(GaussianMatrix(n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
  }

  // Symmetric with standard-normal entries.
  SymMatrix Symmetric(int n) { return SymMatrix(GaussianMatrix(n, n)); }

  // SPD with eigenvalues log-uniform in [1/cond, 1] * scale.
  SymMatrix Spd(int n, double cond = 1e3, double scale = 1.0) {
    Matrix q = Orthogonal(n);
    Vector l(n);
    for (int i = 0; i < n; i++)
      l(i) = scale * std::exp(-Uniform(0.0, std::log(cond)));
    return SymMatrix(q * l.asDiagonal() * q.transpose());
  }

  std::mt19937_64 &engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

inline double RelFrobenius(const Matrix &a, const Matrix &b) {
  const double denom = b.norm();
  return denom == 0.0 ? a.norm() : (a - b).norm() / denom;
}

inline double MaxAbs(const Matrix &a) { return a.cwiseAbs().maxCoeff(); }

// Labeled set with `n_speakers` speakers of `utts` utterances each; speaker
// offsets scaled by `between`, noise by `within`.
inline EmbeddingSet RandomLabeledSet(Random *rng, int dim, int n_speakers,
                                     int utts, double between = 1.0,
                                     double within = 0.5) {
  EmbeddingSet set(dim);
  for (int s = 0; s < n_speakers; s++) {
    Vector h = between * rng->GaussianVector(dim);
    for (int u = 0; u < utts; u++) {
      set.Add("s" + std::to_string(s) + "_u" + std::to_string(u),
              "spk" + std::to_string(s),
              h + within * rng->GaussianVector(dim));
    }
  }
  return set;
}

// Dense log N(x | mean, cov) by Cholesky, independent of the library's
// eigensolver.
inline double GaussianLogDensity(const Vector &x, const Vector &mean,
                                 const Matrix &cov) {
  Eigen::LLT<Matrix> llt(cov);
  Vector d = x - mean;
  Vector z = llt.matrixL().solve(d);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < cov.rows(); i++)
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  return -0.5 * (static_cast<double>(x.size()) * std::log(2.0 * M_PI) +
                 log_det + z.squaredNorm());
}

}  // namespace testing
}  // namespace coralplus

#endif  // CORALPLUS_TESTS_TEST_UTIL_H_
