#pragma once

#include <random>

#include "qef/ccr.hpp"
#include "qef/gaussian_state.hpp"
#include "qef/matrix_ops.hpp"

namespace qef::test {

using Rng = std::mt19937_64;

inline RealMatrix random_real(Eigen::Index rows, Eigen::Index cols, Rng& g, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(g);
  return m;
}

inline ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& g,
                                    double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(d(g), d(g));
  return m;
}

inline RealMatrix random_symmetric(Eigen::Index n, Rng& g, double scale = 1.0) {
  RealMatrix m = random_real(n, n, g, scale);
  return 0.5 * (m + m.transpose());
}

inline ComplexMatrix random_complex_symmetric(Eigen::Index n, Rng& g, double scale = 1.0) {
  ComplexMatrix m = random_complex(n, n, g, scale);
  return 0.5 * (m + m.transpose());
}

inline RealMatrix random_spd(Eigen::Index n, Rng& g, double scale = 1.0) {
  RealMatrix m = random_real(n, n, g, scale);
  return m * m.transpose() + 0.05 * scale * scale * RealMatrix::Identity(n, n);
}

inline RealMatrix random_antisymmetric(Eigen::Index n, Rng& g, double scale = 1.0) {
  RealMatrix m = random_real(n, n, g, scale);
  return 0.5 * (m - m.transpose());
}

inline CcrMatrix random_nonsingular_ccr(Eigen::Index n, Rng& g, double scale = 1.0) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    CcrMatrix ccr = CcrMatrix::validate(random_antisymmetric(n, g, scale));
    if (!ccr.is_singular()) return ccr;
  }
  throw std::runtime_error("random_nonsingular_ccr: no luck");
}

// Symplectic w.r.t. J = canonical_j(nu): exp(2 J H) with H symmetric.
inline RealMatrix random_symplectic(Eigen::Index nu, Rng& g, double scale = 0.3) {
  const RealMatrix h = random_symmetric(2 * nu, g, scale);
  return matrix_exp(RealMatrix(2.0 * canonical_j(nu) * h));
}

// Admissible state over the given CCR matrix: lifts a random Gram matrix
// until P + i*Theta clears the PSD floor.
inline GaussianState random_admissible_state(const CcrMatrix& ccr, Rng& g, double margin = 0.05) {
  const Eigen::Index n = ccr.order();
  RealMatrix p = random_spd(n, g, 0.7);
  const ComplexMatrix h = p.cast<Complex>() + kImag * ccr.theta().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const double lift = es.eigenvalues().minCoeff();
  if (lift < margin) p += (margin - lift) * RealMatrix::Identity(n, n);
  return GaussianState::admissible(p, ccr);
}

}  // namespace qef::test
