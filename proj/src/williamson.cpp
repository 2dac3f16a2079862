#include "qef/williamson.hpp"

#include <cmath>
#include <string>

#include "qef/ccr.hpp"

namespace qef {

RealMatrix WilliamsonDecomposition::lambda_matrix() const {
  const Eigen::Index nu = lambdas.size();
  RealMatrix lam = RealMatrix::Zero(2 * nu, 2 * nu);
  for (Eigen::Index k = 0; k < nu; ++k) {
    lam(2 * k, 2 * k) = lambdas(k);
    lam(2 * k + 1, 2 * k + 1) = lambdas(k);
  }
  return lam;
}

WilliamsonDecomposition williamson(const RealMatrix& m) {
  require_square(m, "williamson");
  require_finite(m, "williamson");
  const Eigen::Index n = m.rows();
  if (n % 2 != 0) fail(ErrorKind::dimension, "williamson: order must be even");
  if (symmetry_residual(m, SymmetryKind::symmetric) > default_tolerance(m))
    fail(ErrorKind::domain, "williamson: matrix is not symmetric");

  const RealMatrix msym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(msym);
  if (es.info() != Eigen::Success) fail(ErrorKind::domain, "williamson: eigensolver failed");
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * (1.0 + top))
    fail(ErrorKind::not_positive_definite,
         "williamson: matrix is not positive definite (min eigenvalue " +
             std::to_string(es.eigenvalues().minCoeff()) + ")");

  const RealVector sqrt_ev = es.eigenvalues().cwiseSqrt();
  const RealMatrix msqrt =
      es.eigenvectors() * sqrt_ev.asDiagonal() * es.eigenvectors().transpose();
  const RealMatrix minvsqrt =
      es.eigenvectors() * sqrt_ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

  const Eigen::Index nu = n / 2;
  const RealMatrix omega = 2.0 * canonical_j(nu);  // I_nu (x) bJ
  RealMatrix w = msqrt * omega * msqrt;
  w = 0.5 * (w - w.transpose()).eval();

  auto [q, lambdas] = detail::skew_canonical(w);

  RealMatrix v = minvsqrt * q;
  for (Eigen::Index k = 0; k < nu; ++k) {
    const double s = std::sqrt(lambdas(k));
    v.col(2 * k) *= s;
    v.col(2 * k + 1) *= s;
  }

  WilliamsonDecomposition out;
  out.V = std::move(v);
  out.lambdas = std::move(lambdas);
  const RealMatrix j = canonical_j(nu);
  out.symplectic_residual = max_abs(RealMatrix(out.V * j * out.V.transpose() - j));
  out.diagonal_residual =
      max_abs(RealMatrix(out.V.transpose() * msym * out.V - out.lambda_matrix()));
  out.degenerate = false;
  for (Eigen::Index k = 0; k + 1 < nu; ++k)
    if (std::abs(out.lambdas(k) - out.lambdas(k + 1)) < 1e-8) out.degenerate = true;
  return out;
}

}  // namespace qef
