#pragma once

#include <Eigen/Dense>
#include <complex>

#include "tnorms/rng.hpp"

namespace tnorms {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline CMatrix matrix_unit(int rows, int cols, int i, int j) {
  CMatrix m = CMatrix::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

inline CMatrix matrix_unit(int n, int i, int j) {
  return matrix_unit(n, n, i, j);
}

// Kronecker product with the first factor on the outer index level:
// (A (x) B)[(i,t),(j,u)] = A(i,j) B(t,u).
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// entrywise (Hadamard/Schur) product of scalar matrices
inline CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b);
}

// Entries many orders of magnitude below the largest one contribute
// nothing to singular values but denormal-range values derail the Jacobi
// rotations; flush them before any SVD.
inline CMatrix svd_sanitized(const CMatrix& a) {
  const double mx = a.cwiseAbs().maxCoeff();
  if (mx == 0.0 || !std::isfinite(mx)) return a;
  const double thr = mx * 1e-150;
  CMatrix out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(out(i, j)) < thr) out(i, j) = Complex(0.0, 0.0);
  return out;
}

// Operator norm = largest singular value. Jacobi SVD on small inputs,
// Hermitian eigensolver on the Gram matrix for larger ones (the top
// singular value is well conditioned under squaring).
inline double op_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Eigen::Index mx = std::max(a.rows(), a.cols());
  if (mx <= 40) {
    Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(a));
    return svd.singularValues()(0);
  }
  if (a.rows() >= a.cols()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a,
                                              Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a * a.adjoint(),
                                            Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double trace_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(a));
  return svd.singularValues().sum();
}

inline double frob(const CMatrix& a) { return a.norm(); }

inline bool approx_equal(const CMatrix& a, const CMatrix& b,
                         double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Warm-started power iteration on A^*A; good enough for line searches,
// exact SVD is still used whenever a value is certified.
inline double op_norm_estimate(const CMatrix& a, CVector& warm,
                               int max_steps = 60, double tol = 1e-11) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (warm.size() != a.cols()) {
    warm = CVector::Ones(a.cols());
    warm(0) = Complex(1.0, 0.3);  // break symmetric stalls
  }
  if (warm.norm() == 0.0) warm = CVector::Ones(a.cols());
  warm.normalize();
  double prev = 0.0;
  for (int s = 0; s < max_steps; ++s) {
    CVector w = a * warm;
    double sigma = w.norm();
    if (sigma == 0.0) return 0.0;
    warm = a.adjoint() * w;
    double nn = warm.norm();
    if (nn == 0.0) return sigma;
    warm /= nn;
    if (std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
    prev = sigma;
  }
  return prev;
}

namespace detail {
inline void top_singular_triplet(const CMatrix& m, double& sigma, CVector& l,
                                 CVector& r) {
  Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(m),
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  sigma = svd.singularValues()(0);
  l = svd.matrixU().col(0);
  r = svd.matrixV().col(0);
}
}  // namespace detail

// Unitary polar factor (all singular values snapped to 1).
inline CMatrix polar_isometry(const CMatrix& g) {
  Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(g),
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Spectral projection onto the unit ball: singular values clamped to <= 1.
inline CMatrix clamp_to_unit_ball(const CMatrix& g) {
  Eigen::JacobiSVD<CMatrix> svd(svd_sanitized(g),
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sv = svd.singularValues();
  bool inside = true;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1.0) {
      sv(i) = 1.0;
      inside = false;
    }
  if (inside) return g;
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

inline CMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  return m;
}

inline CVector gaussian_vector(int n, Rng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  return v;
}

// Haar-distributed unitary from the QR of a Gaussian matrix, with the
// usual phase fix on the R diagonal.
inline CMatrix haar_unitary(int n, Rng& rng) {
  CMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double ad = std::abs(d);
    q.col(i) *= (ad > 0) ? d / ad : Complex(1.0, 0.0);
  }
  return q;
}

inline bool is_diagonal(const CMatrix& a, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && std::abs(a(i, j)) > tol) return false;
  return true;
}

inline CMatrix diagonal_part(const CMatrix& a) {
  CMatrix d = CMatrix::Zero(a.rows(), a.cols());
  const Eigen::Index n = std::min(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = a(i, i);
  return d;
}

}  // namespace tnorms
