#pragma once

#include <vector>

#include "qef/ccr.hpp"
#include "qef/gaussian_state.hpp"
#include "qef/matrix_ops.hpp"
#include "qef/williamson.hpp"

namespace qef {

// Truncated-oscillator realization of n = 2*nu quantum variables with an
// arbitrary nonsingular CCR matrix: X = T Z where Z = (q_1, p_1, ...) are
// the standard quadratures at truncation d per mode and Theta = T J T^T.
// Everything here is brute force by construction; it exists to cross-check
// the closed-form determinant formulas on small systems.
class FockOscillator {
 public:
  FockOscillator(const CcrMatrix& ccr, Eigen::Index truncation);

  Eigen::Index modes() const { return nu_; }
  Eigen::Index truncation() const { return trunc_; }
  Eigen::Index dim() const { return dim_; }
  const RealMatrix& T() const { return t_; }
  const CcrMatrix& ccr() const { return ccr_; }

  // Gaussian state with real covariance P (w.r.t. the X variables):
  // thermal occupation per Williamson mode, conjugated by the Gaussian
  // unitary of the diagonalizing symplectic map.
  void set_state(const RealMatrix& p);
  void set_vacuum();  // P = T T^T / 2
  const ComplexMatrix& rho() const { return rho_; }
  const RealMatrix& state_covariance() const { return p_; }

  // Tr(rho Z_a Z_b) for all pairs; equals P' + iJ up to truncation error.
  ComplexMatrix measured_z_covariance() const;

  // X^T C X as a dim x dim matrix (C complex symmetric, order n).
  ComplexMatrix quadratic_operator(const ComplexMatrix& c) const;
  // exp(X^T C X); Hermitian exponents go through an eigensolve.
  ComplexMatrix exp_quadratic(const ComplexMatrix& c) const;

  // Tr(rho * prod_k exp(X^T C_k X)), factors multiplied left to right.
  Complex expectation(const std::vector<ComplexMatrix>& exponents) const;
  Complex expectation_op(const ComplexMatrix& op) const;

  // Weyl operator e^{i u^T X}.
  ComplexMatrix weyl(const RealVector& u) const;

  // Frobenius norm of the safe-block difference between e^{i u^T X} and
  // e^{(i/2) u^T diam(Theta) u} * prod_k e^{i u_k X_k}.
  double verify_weyl_factorization(const RealVector& u, Eigen::Index margin = 5) const;

  // max-norm CCR defect of the truncated quadratures away from the corner.
  double ccr_residual(Eigen::Index margin = 5) const;

  // max-norm of (a - b) restricted to rows/columns whose per-mode level
  // stays below truncation - margin.
  double safe_block_max(const ComplexMatrix& a, const ComplexMatrix& b,
                        Eigen::Index margin) const;
  double safe_block_frobenius(const ComplexMatrix& a, const ComplexMatrix& b,
                              Eigen::Index margin) const;

 private:
  ComplexMatrix embed(Eigen::Index mode, const ComplexMatrix& local) const;
  ComplexMatrix embed_pair(Eigen::Index mode_a, const ComplexMatrix& la, Eigen::Index mode_b,
                           const ComplexMatrix& lb) const;
  // Z_a Z_b as a dim x dim matrix via per-mode Kronecker structure.
  ComplexMatrix z_product(Eigen::Index a, Eigen::Index b) const;
  ComplexMatrix z_single(Eigen::Index a) const;
  std::vector<bool> safe_mask(Eigen::Index margin) const;
  ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex prefactor) const;

  CcrMatrix ccr_;
  RealMatrix t_;
  Eigen::Index nu_ = 0;
  Eigen::Index trunc_ = 0;
  Eigen::Index dim_ = 0;
  ComplexMatrix q_small_, p_small_;  // d x d single-mode quadratures
  ComplexMatrix rho_;
  RealMatrix p_;
};

}  // namespace qef
