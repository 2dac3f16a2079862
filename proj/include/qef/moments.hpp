#pragma once

#include "qef/gaussian_state.hpp"

namespace qef {

struct ProductMomentReport {
  Complex ey;                // E Y, Y = prod_k exp(-X_k^2/2) in index order
  double eyy;                // E Y Y^dagger, real positive, <= 1
  double upper_bound;        // 1/sqrt(det(I + 2P))
  ComplexMatrix K;           // augmented quantum covariance of (X; RX)
  double eyy_imag_residual;  // |Im| of the determinant, relative
};

// E exp(-sigma2 xi^2 / 2) for a zero-mean Gaussian quantum variable of
// variance Sigma2: 1/sqrt(1 + Sigma2*sigma2).
double single_variable_qem(double Sigma2, double sigma2);

Complex product_moment_ey(const GaussianState& state);

ProductMomentReport product_moment_eyy(const GaussianState& state);

// Both moments plus the bound in one report.
ProductMomentReport product_moments(const GaussianState& state);

namespace detail {

// Continuity-tracked square root of eps -> det(base + i*eps*imag) at eps=1,
// anchored at the real positive value at eps=0.  Used to pick the branch of
// 1/sqrt(det(...)) by homotopy from the commuting case.
Complex continued_sqrt_det(const ComplexMatrix& base, const ComplexMatrix& imag_part);

}  // namespace detail

}  // namespace qef
