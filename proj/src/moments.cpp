#include "qef/moments.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qef {

double single_variable_qem(double Sigma2, double sigma2) {
  if (Sigma2 < 0.0 || sigma2 < 0.0)
    fail(ErrorKind::domain, "single_variable_qem: variances must be nonnegative");
  return 1.0 / std::sqrt(1.0 + Sigma2 * sigma2);
}

namespace detail {

Complex continued_sqrt_det(const ComplexMatrix& base, const ComplexMatrix& imag_part) {
  const auto value_at = [&](double eps) { return det(ComplexMatrix(base + kImag * eps * imag_part)); };
  const Complex f0 = value_at(0.0);
  const double floor = 1e-12 * (1.0 + std::abs(f0));

  int steps = 32;
  for (;;) {
    double arg_total = std::arg(f0);
    Complex prev = f0;
    bool refine = false;
    for (int k = 1; k <= steps; ++k) {
      const Complex cur = value_at(static_cast<double>(k) / steps);
      if (std::abs(cur) < floor)
        fail(ErrorKind::branch_cut,
             "continued_sqrt_det: determinant path crosses zero (det = " +
                 std::to_string(cur.real()) + " + " + std::to_string(cur.imag()) + "i)");
      const double delta = std::arg(cur / prev);
      if (std::abs(delta) > 1.0 && steps < 4096) {  // step too coarse to trust
        refine = true;
        break;
      }
      arg_total += delta;
      prev = cur;
    }
    if (refine) {
      steps *= 4;
      continue;
    }
    return std::sqrt(std::abs(prev)) * std::exp(kImag * (arg_total / 2.0));
  }
}

}  // namespace detail

Complex product_moment_ey(const GaussianState& state) {
  const Eigen::Index n = state.order();
  const ComplexMatrix base =
      (state.covariance_real() + RealMatrix::Identity(n, n)).cast<Complex>();
  const ComplexMatrix imag_part = diam(state.ccr().theta()).cast<Complex>();

  const Complex d = det(ComplexMatrix(base + kImag * imag_part));
  Complex root;
  if (std::abs(std::arg(d)) <= M_PI / 2.0) {
    if (std::abs(d) < 1e-300) fail(ErrorKind::branch_cut, "product_moment_ey: zero determinant");
    root = std::sqrt(d);
  } else {
    // Close to the branch cut; fix the branch by continuity from Theta = 0.
    root = detail::continued_sqrt_det(base, imag_part);
  }
  return 1.0 / root;
}

ProductMomentReport product_moment_eyy(const GaussianState& state) {
  const Eigen::Index n = state.order();
  const RealMatrix r = reversal(n);
  RealMatrix b(2 * n, n);
  b.topRows(n) = RealMatrix::Identity(n, n);
  b.bottomRows(n) = r;

  const ComplexMatrix quantum_cov =
      state.covariance_real().cast<Complex>() + kImag * state.ccr().theta().cast<Complex>();
  ProductMomentReport rep;
  rep.K = b.cast<Complex>() * quantum_cov * b.transpose().cast<Complex>();

  const ComplexMatrix a = ComplexMatrix::Identity(2 * n, 2 * n) + diam(rep.K);
  const Complex d = det(a);
  rep.eyy_imag_residual = std::abs(d.imag()) / (1.0 + std::abs(d.real()));
  if (d.real() <= 0.0)
    fail(ErrorKind::domain, "product_moment_eyy: determinant not positive (" +
                                std::to_string(d.real()) + ")");
  rep.eyy = 1.0 / std::sqrt(d.real());

  const double bound_det =
      det(RealMatrix(RealMatrix::Identity(n, n) + 2.0 * state.covariance_real()));
  rep.upper_bound = 1.0 / std::sqrt(bound_det);
  rep.ey = Complex(0, 0);
  return rep;
}

ProductMomentReport product_moments(const GaussianState& state) {
  ProductMomentReport rep = product_moment_eyy(state);
  rep.ey = product_moment_ey(state);
  return rep;
}

}  // namespace qef
