#include "qef/recursion.hpp"

#include <cmath>
#include <string>

namespace qef {

namespace {

void require_real_symmetric(const RealMatrix& m, const char* who) {
  require_square(m, who);
  require_finite(m, who);
  if (symmetry_residual(m, SymmetryKind::symmetric) > default_tolerance(m))
    fail(ErrorKind::domain, std::string(who) + ": weight matrix is not symmetric");
}

ComplexMatrix four_i_theta(const RealMatrix& theta) {
  return 4.0 * kImag * theta.cast<Complex>();
}

}  // namespace

RecursionState RecursionState::initial(const RealMatrix& c0, const CcrMatrix& theta0) {
  require_real_symmetric(c0, "recursion");
  if (c0.rows() != theta0.order())
    fail(ErrorKind::dimension, "recursion: C_0 and Theta_0 orders differ");
  RecursionState s;
  s.horizon_ = 0;
  s.base_order_ = theta0.order();
  s.pi_ = 0.5 * (c0 + c0.transpose());
  s.theta_ = theta0.theta();
  s.factor_ = matrix_exp(ComplexMatrix(four_i_theta(s.theta_) * s.pi_.cast<Complex>()));
  s.guard_ = operator_norm(ComplexMatrix(four_i_theta(s.theta_) * s.pi_.cast<Complex>()));
  s.branch_risk_ = s.guard_ >= M_PI;
  return s;
}

RealMatrix RecursionState::extend_theta(const RealMatrix& sigma,
                                        const RealMatrix& theta_block) const {
  const Eigen::Index n = base_order_;
  const Eigen::Index m = theta_.rows();
  if (theta_block.rows() != n || theta_block.cols() != n)
    fail(ErrorKind::dimension, "recursion: theta block must be n x n");
  if (symmetry_residual(theta_block, SymmetryKind::antisymmetric) >
      default_tolerance(theta_block))
    fail(ErrorKind::malformed_ccr, "recursion: theta block is not antisymmetric");
  if (sigma.rows() != n || sigma.cols() != m)
    fail(ErrorKind::dimension, "recursion: sigma must be n x (N*n)");
  RealMatrix next = RealMatrix::Zero(m + n, m + n);
  next.topLeftCorner(m, m) = theta_;
  next.topRightCorner(m, n) = -sigma.transpose();
  next.bottomLeftCorner(n, m) = sigma;
  next.bottomRightCorner(n, n) = 0.5 * (theta_block - theta_block.transpose());
  return next;
}

RecursionState RecursionState::advance(const ComplexMatrix& weight_factor, double weight_guard,
                                       const RealMatrix& sigma, const RealMatrix& /*theta_block*/,
                                       const RealMatrix& theta_next) const {
  const Eigen::Index n = base_order_;
  const Eigen::Index m = theta_.rows();
  if (horizon_ + 1 > kHorizonCap)
    fail(ErrorKind::domain, "recursion: horizon cap exceeded (" +
                                std::to_string(kHorizonCap) + " steps)");

  CcrMatrix theta_ccr = CcrMatrix::validate(theta_next);
  if (theta_ccr.is_singular())
    fail(ErrorKind::singular_ccr, "recursion: extended CCR matrix is singular");

  // Middle factor: exp of the embedded previous generator, assembled from
  // the cached factor and the entire function of the previous generator.
  const ComplexMatrix z_prev = four_i_theta(theta_) * pi_.cast<Complex>();
  ComplexMatrix middle = ComplexMatrix::Zero(m + n, m + n);
  middle.topLeftCorner(m, m) = factor_;
  middle.bottomLeftCorner(n, m) =
      4.0 * kImag * sigma.cast<Complex>() * pi_.cast<Complex>() * upsilon(z_prev);
  middle.bottomRightCorner(n, n) = ComplexMatrix::Identity(n, n);

  const ComplexMatrix rhs = weight_factor * middle * weight_factor;

  const ComplexMatrix log_rhs = principal_log(rhs);
  const ComplexMatrix pi_raw =
      Eigen::PartialPivLU<ComplexMatrix>(four_i_theta(theta_next)).solve(log_rhs);

  RecursionState s;
  s.horizon_ = horizon_ + 1;
  s.base_order_ = n;
  s.theta_ = theta_next;
  s.imag_residual_ = max_abs(RealMatrix(pi_raw.imag()));
  s.asym_residual_ = symmetry_residual(pi_raw, SymmetryKind::symmetric);
  const double scale = 1.0 + max_abs(RealMatrix(pi_raw.real()));
  if (s.imag_residual_ > 1e-6 * scale || s.asym_residual_ > 1e-6 * scale)
    fail(ErrorKind::conjugation_symmetry,
         "recursion: Pi_N realness residual " + std::to_string(s.imag_residual_) +
             " / asymmetry " + std::to_string(s.asym_residual_) + " above tolerance");
  const RealMatrix pr = pi_raw.real();
  s.pi_ = 0.5 * (pr + pr.transpose());
  s.factor_ = rhs;  // the recursion defines exp(4i Theta_N Pi_N) to be rhs
  s.guard_ = guard_ + 2.0 * weight_guard;
  s.branch_risk_ = s.guard_ >= M_PI;
  return s;
}

RecursionState RecursionState::step_general(const RealMatrix& c, const RealMatrix& sigma,
                                            const RealMatrix& theta_block) const {
  require_real_symmetric(c, "recursion.step_general");
  const RealMatrix theta_next = extend_theta(sigma, theta_block);
  if (c.rows() != theta_next.rows())
    fail(ErrorKind::dimension, "recursion: C_N must have order (N+1)n");
  const ComplexMatrix gen = four_i_theta(theta_next) * c.cast<Complex>();
  return advance(matrix_exp(gen), operator_norm(gen), sigma, theta_block, theta_next);
}

RecursionState RecursionState::step_current(const RealMatrix& d, const RealMatrix& sigma,
                                            const RealMatrix& theta_block) const {
  require_real_symmetric(d, "recursion.step_current");
  const Eigen::Index n = base_order_;
  if (d.rows() != n) fail(ErrorKind::dimension, "recursion: D_N must be n x n");
  const RealMatrix theta_next = extend_theta(sigma, theta_block);
  const Eigen::Index m = theta_.rows();

  // Sparse closed form of exp(4i Theta_N blockdiag(0, D)):
  //   [[I, -4i sigma^T D Ups(4i theta D)], [0, exp(4i theta D)]].
  const ComplexMatrix zd =
      four_i_theta(theta_next.bottomRightCorner(n, n)) * d.cast<Complex>();
  ComplexMatrix wf = ComplexMatrix::Identity(m + n, m + n);
  wf.topRightCorner(m, n) = -4.0 * kImag * sigma.transpose().cast<Complex>() *
                            d.cast<Complex>() * upsilon(zd);
  wf.bottomRightCorner(n, n) = matrix_exp(zd);

  ComplexMatrix embedded = ComplexMatrix::Zero(m + n, m + n);
  embedded.bottomRightCorner(n, n) = d.cast<Complex>();
  const double guard = operator_norm(ComplexMatrix(four_i_theta(theta_next) * embedded));
  return advance(wf, guard, sigma, theta_block, theta_next);
}

double RecursionState::symplectic_residual() const {
  const ComplexMatrix th = theta_.cast<Complex>();
  return max_abs(ComplexMatrix(factor_ * th * factor_.transpose() - th));
}

}  // namespace qef
