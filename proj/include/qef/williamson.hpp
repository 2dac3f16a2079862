#pragma once

#include "qef/matrix_ops.hpp"

namespace qef {

// Symplectic diagonalization V^T M V = Lambda (x) I_2 with V J V^T = J,
// where J = (1/2) I_nu (x) bJ.  lambdas are the positive imaginary parts of
// the eigenvalues of 2 J M, sorted descending.
struct WilliamsonDecomposition {
  RealMatrix V;
  RealVector lambdas;
  RealMatrix lambda_matrix() const;  // Lambda (x) I_2

  double symplectic_residual;  // max-norm of V J V^T - J
  double diagonal_residual;    // max-norm of V^T M V - Lambda (x) I_2
  bool degenerate;             // some gap below 1e-8 (V gauge not unique)
};

WilliamsonDecomposition williamson(const RealMatrix& m);

}  // namespace qef
