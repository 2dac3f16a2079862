#include "qef/matrix_ops.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace qef {

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double default_tolerance(const RealMatrix& m) { return 1e-9 * (1.0 + max_abs(m)); }
double default_tolerance(const ComplexMatrix& m) { return 1e-9 * (1.0 + max_abs(m)); }

double symmetry_residual(const RealMatrix& m, SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::symmetric: return max_abs(RealMatrix(m - m.transpose()));
    case SymmetryKind::antisymmetric: return max_abs(RealMatrix(m + m.transpose()));
    case SymmetryKind::hermitian: return max_abs(RealMatrix(m - m.transpose()));
    case SymmetryKind::none: return 0.0;
  }
  return 0.0;
}

double symmetry_residual(const ComplexMatrix& m, SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::symmetric: return max_abs(ComplexMatrix(m - m.transpose()));
    case SymmetryKind::antisymmetric: return max_abs(ComplexMatrix(m + m.transpose()));
    case SymmetryKind::hermitian: return max_abs(ComplexMatrix(m - m.adjoint()));
    case SymmetryKind::none: return 0.0;
  }
  return 0.0;
}

void require_square(const RealMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    fail(ErrorKind::dimension, std::string(who) + ": matrix must be square, got " +
                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    fail(ErrorKind::dimension, std::string(who) + ": matrix must be square, got " +
                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_finite(const RealMatrix& m, const char* who) {
  if (!m.allFinite()) fail(ErrorKind::domain, std::string(who) + ": non-finite entries");
}

void require_finite(const ComplexMatrix& m, const char* who) {
  if (!m.allFinite()) fail(ErrorKind::domain, std::string(who) + ": non-finite entries");
}

namespace {

template <typename Mat>
Mat diam_impl(const Mat& m) {
  require_square(m, "diam");
  Mat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out(j, k) = j <= k ? m(j, k) : m(k, j);
  return out;
}

}  // namespace

RealMatrix diam(const RealMatrix& m) { return diam_impl(m); }
ComplexMatrix diam(const ComplexMatrix& m) { return diam_impl(m); }

RealMatrix reversal(Eigen::Index n) {
  if (n < 1) fail(ErrorKind::dimension, "reversal: order must be at least 1");
  RealMatrix r = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) r(i, n - 1 - i) = 1.0;
  return r;
}

ComplexMatrix upsilon(const ComplexMatrix& z) {
  require_square(z, "upsilon");
  require_finite(z, "upsilon");
  const Eigen::Index n = z.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (n == 0) return z;

  const double scale = max_abs(z);
  if (scale < 0.35) {
    // Taylor series; terms are z^k/(k+1)! so convergence is immediate here.
    ComplexMatrix sum = id;
    ComplexMatrix term = id;
    for (int k = 1; k <= 40; ++k) {
      term = (term * z / static_cast<double>(k + 1)).eval();
      sum += term;
      if (max_abs(term) < 1e-18 * (1.0 + max_abs(sum))) break;
    }
    return sum;
  }

  Eigen::PartialPivLU<ComplexMatrix> lu(z);
  if (std::abs(lu.determinant()) > 1e-8 * std::pow(scale, static_cast<double>(n))) {
    return lu.solve((matrix_exp(z) - id).eval());
  }

  // Singular or badly conditioned away from zero: read the value off a
  // block-triangular exponential, which needs no inversion at all.
  ComplexMatrix big = ComplexMatrix::Zero(2 * n, 2 * n);
  big.topRightCorner(n, n) = id;
  big.bottomRightCorner(n, n) = z;
  return matrix_exp(big).topRightCorner(n, n);
}

RealMatrix matrix_exp(const RealMatrix& m) {
  require_square(m, "matrix_exp");
  require_finite(m, "matrix_exp");
  return m.exp();
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square(m, "matrix_exp");
  require_finite(m, "matrix_exp");
  return m.exp();
}

ComplexMatrix principal_log(const ComplexMatrix& m) {
  require_square(m, "principal_log");
  require_finite(m, "principal_log");
  Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    fail(ErrorKind::domain, "principal_log: Schur decomposition failed");
  double eig_scale = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    eig_scale = std::max(eig_scale, std::abs(schur.matrixT()(i, i)));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Complex lam = schur.matrixT()(i, i);
    if (std::abs(lam) <= 1e-14 * (1.0 + eig_scale))
      fail(ErrorKind::branch_cut, "principal_log: singular matrix");
    if (lam.real() < 0.0 && std::abs(lam.imag()) <= 1e-12 * std::abs(lam))
      fail(ErrorKind::branch_cut,
           "principal_log: eigenvalue on the negative real axis (" +
               std::to_string(lam.real()) + ")");
  }
  return m.log();
}

namespace {

template <typename Mat>
Mat sqrt_psd_impl(const Mat& m, const char* who) {
  require_square(m, who);
  require_finite(m, who);
  const double tol = default_tolerance(m);
  if (symmetry_residual(m, SymmetryKind::hermitian) > tol)
    fail(ErrorKind::domain, std::string(who) + ": input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) fail(ErrorKind::domain, std::string(who) + ": eigensolver failed");
  RealVector lam = es.eigenvalues();
  const double lam_scale = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-10 * (1.0 + lam_scale))
      fail(ErrorKind::not_positive_definite,
           std::string(who) + ": negative eigenvalue " + std::to_string(lam(i)));
    lam(i) = lam(i) > 0.0 ? std::sqrt(lam(i)) : 0.0;
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

RealMatrix matrix_sqrt_psd(const RealMatrix& m) { return sqrt_psd_impl(m, "matrix_sqrt_psd"); }
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) { return sqrt_psd_impl(m, "matrix_sqrt_psd"); }

double spectral_radius(const RealMatrix& m) {
  require_square(m, "spectral_radius");
  require_finite(m, "spectral_radius");
  if (m.rows() == 0) return 0.0;
  Eigen::EigenSolver<RealMatrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const ComplexMatrix& m) {
  require_square(m, "spectral_radius");
  require_finite(m, "spectral_radius");
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double det(const RealMatrix& m) {
  require_square(m, "det");
  require_finite(m, "det");
  return m.determinant();
}

Complex det(const ComplexMatrix& m) {
  require_square(m, "det");
  require_finite(m, "det");
  return m.determinant();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace qef
