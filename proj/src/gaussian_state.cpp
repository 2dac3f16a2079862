#include "qef/gaussian_state.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qef {

GaussianState::GaussianState(RealMatrix p, CcrMatrix ccr, double min_eig)
    : p_(std::move(p)), ccr_(std::move(ccr)), min_eig_(min_eig) {}

GaussianState GaussianState::admissible(const RealMatrix& p, const CcrMatrix& ccr, double tol) {
  require_square(p, "gaussian_state");
  require_finite(p, "gaussian_state");
  if (p.rows() != ccr.order())
    fail(ErrorKind::dimension, "gaussian_state: P and Theta orders differ");
  if (tol < 0.0) tol = 1e-10 * (1.0 + max_abs(p));
  if (symmetry_residual(p, SymmetryKind::symmetric) > default_tolerance(p))
    fail(ErrorKind::domain, "gaussian_state: P is not symmetric");

  RealMatrix psym = 0.5 * (p + p.transpose());
  const ComplexMatrix h =
      psym.cast<Complex>() + kImag * ccr.theta().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol)
    fail(ErrorKind::heisenberg,
         "gaussian_state: P + i*Theta has eigenvalue " + std::to_string(min_eig));
  return GaussianState(std::move(psym), ccr, min_eig);
}

Complex GaussianState::qcf(const RealVector& u) const {
  if (u.size() != p_.rows()) fail(ErrorKind::dimension, "qcf: argument length mismatch");
  return Complex(std::exp(-0.5 * u.dot(p_ * u)), 0.0);
}

double GaussianState::mgf(const RealVector& u) const {
  if (u.size() != p_.rows()) fail(ErrorKind::dimension, "mgf: argument length mismatch");
  return std::exp(0.5 * u.dot(p_ * u));
}

double GaussianState::mgf(const RealVector& u, const RealMatrix& map) const {
  if (map.cols() != p_.rows()) fail(ErrorKind::dimension, "mgf: map has wrong column count");
  if (u.size() != map.rows()) fail(ErrorKind::dimension, "mgf: argument length mismatch");
  const RealVector v = map.transpose() * u;
  return std::exp(0.5 * v.dot(p_ * v));
}

}  // namespace qef
