#pragma once

#include "qef/ccr.hpp"
#include "qef/matrix_ops.hpp"

namespace qef {

// Zero-mean Gaussian state of CCR variables: quantum covariance P + i*Theta
// must be Hermitian positive semidefinite.
class GaussianState {
 public:
  // Builds the state after checking min-eig(P + i*Theta) >= -tol.
  static GaussianState admissible(const RealMatrix& p, const CcrMatrix& ccr, double tol = -1.0);

  const RealMatrix& covariance_real() const { return p_; }
  const CcrMatrix& ccr() const { return ccr_; }
  Eigen::Index order() const { return p_.rows(); }
  double min_eigenvalue() const { return min_eig_; }

  // Quasi-characteristic function exp(-u^T P u / 2); real positive here.
  Complex qcf(const RealVector& u) const;

  // Moment-generating function of the quantum vector itself.
  double mgf(const RealVector& u) const;
  // MGF of the linear image M X (covariance congruence by M).
  double mgf(const RealVector& u, const RealMatrix& map) const;

 private:
  GaussianState(RealMatrix p, CcrMatrix ccr, double min_eig);

  RealMatrix p_;
  CcrMatrix ccr_;
  double min_eig_;
};

}  // namespace qef
