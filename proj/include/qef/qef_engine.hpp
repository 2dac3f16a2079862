#pragma once

#include "qef/ccr.hpp"
#include "qef/gaussian_state.hpp"
#include "qef/williamson.hpp"

namespace qef {

// Inputs of Xi = E exp(X^T Pi X).  risk_theta scales Pi multiplicatively.
struct QefProblem {
  GaussianState state;
  RealMatrix pi;
  double risk_theta = 1.0;

  RealMatrix effective_pi() const { return risk_theta * pi; }
};

// Everything the determinant formula needs, exposed so that oracles and
// gauge-invariance tests can reuse or substitute individual pieces.
struct QefIntermediates {
  CcrCanonicalization canon;     // Theta = T J T^T
  WilliamsonDecomposition will;  // of T^T Pi T
  RealMatrix F;                  // I_nu (x) [[1,0],[0,1],[1,0]], 3nu x n
  RealVector alphas;             // tanh(lambda_k)/2
  RealVector betas;              // sinh(2 lambda_k)/2
  RealVector mho_diag;           // 2*(alpha_k, beta_k, alpha_k)
  RealMatrix re_l;               // F V^-1 T^-1 P T^-T V^-T F^T
  RealMatrix fjf;                // F J F^T
  ComplexMatrix l;               // re_l + i*fjf
  RealMatrix mgf_map;            // F V^-1 T^-1 (so Psi(u) = state MGF of map^T u)
};

struct QefReport {
  Complex xi;
  bool feasible;            // spectral radius of mho * Re L below one
  bool sufficient;          // rho(P Pi) max_k sinh(2 lambda_k)/lambda_k < 1
  double sufficient_value;  // the left-hand side of that test
  double rho_re;            // rho(mho * Re L)
  double rho_complex;       // rho(mho * diam(L)), reported for inspection only
  double classical;         // 1/sqrt(det(I - 2 P Pi)), NaN when divergent
  bool classical_diverged;
  RealVector lambdas;
  double xi_imag_ratio;  // |Im xi| / (1 + |xi|)
  bool diverged;         // determinant homotopy passed near zero; xi untrusted
};

// Validates the problem: Pi symmetric positive definite, Theta nonsingular.
void validate_problem(const QefProblem& problem);

QefIntermediates build_intermediates(const QefProblem& problem);
QefIntermediates build_intermediates(const QefProblem& problem, const CcrCanonicalization& canon);
QefIntermediates build_intermediates(const QefProblem& problem, const CcrCanonicalization& canon,
                                     const WilliamsonDecomposition& will);

QefReport compute_qef(const QefProblem& problem);
QefReport compute_qef(const QefProblem& problem, const QefIntermediates& parts);

// rho(P Pi) max_k sinh(2 lambda_k)/lambda_k and its comparison with 1.
std::pair<bool, double> sufficient_condition(const QefProblem& problem);

// Commuting-variable limit 1/sqrt(det(I - 2 P Pi)); requires rho(2 P Pi) < 1.
double classical_limit(const QefProblem& problem);

}  // namespace qef
