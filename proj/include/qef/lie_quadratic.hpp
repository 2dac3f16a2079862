#pragma once

#include <vector>

#include "qef/ccr.hpp"
#include "qef/matrix_ops.hpp"

namespace qef {

// The quadratic forms X^T C X over a fixed CCR structure form a Lie algebra
// isomorphic to {4i Theta C : C symmetric}.  This module realizes the
// algebra operations on coefficient matrices.

// Coefficient of [X^T A X, X^T B X]: 4i (A Theta B - B Theta A).
ComplexMatrix quad_commutator(const ComplexMatrix& a, const ComplexMatrix& b,
                              const CcrMatrix& ccr);

// The scalar -i tr(C Theta) that an antisymmetric coefficient collapses to.
Complex antisymmetric_trace_constant(const ComplexMatrix& c, const CcrMatrix& ccr);

struct SymplecticImage {
  ComplexMatrix S;             // exp(4i Theta C)
  double symplectic_residual;  // max-norm of S Theta S^T - Theta
};

SymplecticImage exp_map(const ComplexMatrix& c, const CcrMatrix& ccr);

struct QuadraticProductResult {
  ComplexMatrix E;           // symmetric coefficient of the merged exponent
  double symmetry_residual;  // asymmetry removed by the final symmetrization
  double exp_residual;       // relative max-norm of exp-map(E) vs the product
  bool branch_risk;          // norm guard sum ||4i Theta C_k|| >= pi
};

// Coefficient E with exp(X^T A X) exp(X^T B X) = exp(X^T E X), computed via
// the principal log of the symplectic product.
QuadraticProductResult dynkin_product(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const CcrMatrix& ccr);

QuadraticProductResult product_chain(const std::vector<ComplexMatrix>& cs, const CcrMatrix& ccr);

struct SandwichResult {
  RealMatrix E;
  double imag_residual;
  double symmetry_residual;
  bool branch_risk;
};

// Real symmetric E with
//   (prod-left e^{X^T C_k X}) e^{X^T C_0 X} (prod-right e^{X^T C_k X}) = e^{X^T E X}.
// A large imaginary residual signals branch trouble and raises an error.
SandwichResult symmetric_sandwich(const RealMatrix& c0, const std::vector<RealMatrix>& cs,
                                  const CcrMatrix& ccr);

struct Factorization2 {
  double alpha;
  double beta;
  double residual;  // relative max-norm identity check on the 2x2 matrices
};

// alpha, beta with E(alpha E1) E(beta E2) E(alpha E1) = E(diag(a, b)) for the
// order-2 CCR matrix theta*bJ.
Factorization2 factorize_2x2(double a, double b, double theta);

}  // namespace qef
