#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qef/errors.hpp"

namespace qef {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline const Complex kImag{0.0, 1.0};

enum class SymmetryKind { symmetric, antisymmetric, hermitian, none };

// Scale-aware default tolerance: 1e-9 * (1 + max|entry|).
double default_tolerance(const RealMatrix& m);
double default_tolerance(const ComplexMatrix& m);

double max_abs(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);

// max-norm of the residual against the claimed symmetry kind.
double symmetry_residual(const RealMatrix& m, SymmetryKind kind);
double symmetry_residual(const ComplexMatrix& m, SymmetryKind kind);

void require_square(const RealMatrix& m, const char* who);
void require_square(const ComplexMatrix& m, const char* who);
void require_finite(const RealMatrix& m, const char* who);
void require_finite(const ComplexMatrix& m, const char* who);

// Symmetrization that keeps the main diagonal and the upper triangle:
// (M^diam)_{jk} = m_{jk} for j <= k and m_{kj} otherwise.
RealMatrix diam(const RealMatrix& m);
ComplexMatrix diam(const ComplexMatrix& m);

// Hankel matrix with ones on the anti-diagonal; an involution (R^2 = I).
RealMatrix reversal(Eigen::Index n);

// Entire function sum_{k>=0} Z^k/(k+1)!, equal to (e^Z - I) Z^{-1} where
// Z is invertible.  Small arguments use the Taylor series, mid-range
// well-conditioned arguments a linear solve, and everything else the
// top-right block of exp([[0, I], [0, Z]]).
ComplexMatrix upsilon(const ComplexMatrix& z);

RealMatrix matrix_exp(const RealMatrix& m);
ComplexMatrix matrix_exp(const ComplexMatrix& m);

// Principal matrix logarithm.  Rejects singular inputs and eigenvalues on
// the closed negative real axis (branch cut).
ComplexMatrix principal_log(const ComplexMatrix& m);

// Unique PSD square root of a Hermitian PSD matrix.
RealMatrix matrix_sqrt_psd(const RealMatrix& m);
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

double spectral_radius(const RealMatrix& m);
double spectral_radius(const ComplexMatrix& m);

RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double det(const RealMatrix& m);
Complex det(const ComplexMatrix& m);

// Largest singular value (used for Lie-layer norm guards).
double operator_norm(const ComplexMatrix& m);

}  // namespace qef
