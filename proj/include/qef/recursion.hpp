#pragma once

#include "qef/ccr.hpp"
#include "qef/matrix_ops.hpp"

namespace qef {

// Discrete-time equivalence between the multiplicative cost
//   Q_N = e^{X_N^T C_N X_N} Q_{N-1} e^{X_N^T C_N X_N}
// and the single exponential E_N = e^{X_N^T Pi_N X_N}: Pi_N satisfies
//   exp(4i Theta_N Pi_N)
//     = exp(4i Theta_N C_N) * M_N * exp(4i Theta_N C_N),
// where M_N is the block-triangular exponential of the embedded Pi_{N-1}.
class RecursionState {
 public:
  static constexpr int kHorizonCap = 64;

  // N = 0: Pi_0 = C_0 over the base CCR matrix.
  static RecursionState initial(const RealMatrix& c0, const CcrMatrix& theta0);

  // General weight C_N of order (N+1)n.
  RecursionState step_general(const RealMatrix& c, const RealMatrix& sigma,
                              const RealMatrix& theta_block) const;

  // Current-variable weight D_N of order n; equals step_general with
  // C_N = blockdiag(0, D_N) but uses the sparse factor closed form.
  RecursionState step_current(const RealMatrix& d, const RealMatrix& sigma,
                              const RealMatrix& theta_block) const;

  int horizon() const { return horizon_; }
  Eigen::Index base_order() const { return base_order_; }
  const RealMatrix& pi() const { return pi_; }
  const RealMatrix& theta() const { return theta_; }
  // exp(4i Theta_N Pi_N), cached from the recursion itself.
  const ComplexMatrix& symplectic_factor() const { return factor_; }

  double imag_residual() const { return imag_residual_; }
  double asym_residual() const { return asym_residual_; }
  bool branch_risk() const { return branch_risk_; }
  // max-norm of S Theta_N S^T - Theta_N for S = symplectic factor.
  double symplectic_residual() const;

 private:
  RecursionState() = default;

  RecursionState advance(const ComplexMatrix& weight_factor, double weight_guard,
                         const RealMatrix& sigma, const RealMatrix& theta_block,
                         const RealMatrix& theta_next) const;
  RealMatrix extend_theta(const RealMatrix& sigma, const RealMatrix& theta_block) const;

  int horizon_ = 0;
  Eigen::Index base_order_ = 0;
  RealMatrix pi_;
  RealMatrix theta_;
  ComplexMatrix factor_;
  double imag_residual_ = 0.0;
  double asym_residual_ = 0.0;
  double guard_ = 0.0;
  bool branch_risk_ = false;
};

}  // namespace qef
