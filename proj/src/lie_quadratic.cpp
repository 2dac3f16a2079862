#include "qef/lie_quadratic.hpp"

#include <cmath>
#include <string>

namespace qef {

namespace {

void require_symmetric(const ComplexMatrix& m, const char* who) {
  require_square(m, who);
  require_finite(m, who);
  if (symmetry_residual(m, SymmetryKind::symmetric) > default_tolerance(m))
    fail(ErrorKind::domain, std::string(who) + ": coefficient matrix is not symmetric");
}

void require_match(const ComplexMatrix& m, const CcrMatrix& ccr, const char* who) {
  if (m.rows() != ccr.order())
    fail(ErrorKind::dimension, std::string(who) + ": coefficient order != CCR order");
}

ComplexMatrix theta_c(const CcrMatrix& ccr) { return ccr.theta().cast<Complex>(); }

// Solves (4i Theta) E = G for E; Theta must be nonsingular.
ComplexMatrix unwrap_generator(const ComplexMatrix& g, const CcrMatrix& ccr, const char* who) {
  if (ccr.is_singular()) fail(ErrorKind::singular_ccr, std::string(who) + ": singular CCR matrix");
  const ComplexMatrix lhs = 4.0 * kImag * theta_c(ccr);
  return Eigen::PartialPivLU<ComplexMatrix>(lhs).solve(g);
}

}  // namespace

ComplexMatrix quad_commutator(const ComplexMatrix& a, const ComplexMatrix& b,
                              const CcrMatrix& ccr) {
  require_symmetric(a, "quad_commutator");
  require_symmetric(b, "quad_commutator");
  require_match(a, ccr, "quad_commutator");
  require_match(b, ccr, "quad_commutator");
  const ComplexMatrix th = theta_c(ccr);
  ComplexMatrix c = 4.0 * kImag * (a * th * b - b * th * a);
  return 0.5 * (c + c.transpose()).eval();  // exact symmetry up to roundoff
}

Complex antisymmetric_trace_constant(const ComplexMatrix& c, const CcrMatrix& ccr) {
  require_square(c, "antisymmetric_trace_constant");
  require_match(c, ccr, "antisymmetric_trace_constant");
  if (symmetry_residual(c, SymmetryKind::antisymmetric) > default_tolerance(c))
    fail(ErrorKind::domain, "antisymmetric_trace_constant: matrix is not antisymmetric");
  return -kImag * (c * theta_c(ccr)).trace();
}

SymplecticImage exp_map(const ComplexMatrix& c, const CcrMatrix& ccr) {
  require_symmetric(c, "exp_map");
  require_match(c, ccr, "exp_map");
  const ComplexMatrix th = theta_c(ccr);
  SymplecticImage img;
  img.S = matrix_exp(ComplexMatrix(4.0 * kImag * th * c));
  img.symplectic_residual = max_abs(ComplexMatrix(img.S * th * img.S.transpose() - th));
  return img;
}

namespace {

QuadraticProductResult merge_product(const ComplexMatrix& product, double guard,
                                     const CcrMatrix& ccr, const char* who) {
  QuadraticProductResult out;
  const ComplexMatrix g = principal_log(product);
  ComplexMatrix e = unwrap_generator(g, ccr, who);
  out.symmetry_residual = symmetry_residual(e, SymmetryKind::symmetric);
  out.E = 0.5 * (e + e.transpose()).eval();
  const ComplexMatrix check = matrix_exp(ComplexMatrix(4.0 * kImag * theta_c(ccr) * out.E));
  out.exp_residual = max_abs(ComplexMatrix(check - product)) / (1.0 + max_abs(product));
  out.branch_risk = guard >= M_PI;
  return out;
}

}  // namespace

QuadraticProductResult dynkin_product(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const CcrMatrix& ccr) {
  return product_chain({a, b}, ccr);
}

QuadraticProductResult product_chain(const std::vector<ComplexMatrix>& cs, const CcrMatrix& ccr) {
  if (cs.empty()) fail(ErrorKind::domain, "product_chain: empty chain");
  const Eigen::Index n = ccr.order();
  ComplexMatrix product = ComplexMatrix::Identity(n, n);
  double guard = 0.0;
  for (const auto& c : cs) {
    require_symmetric(c, "product_chain");
    require_match(c, ccr, "product_chain");
    const ComplexMatrix gen = 4.0 * kImag * theta_c(ccr) * c;
    guard += operator_norm(gen);
    product = (product * matrix_exp(gen)).eval();
  }
  return merge_product(product, guard, ccr, "product_chain");
}

SandwichResult symmetric_sandwich(const RealMatrix& c0, const std::vector<RealMatrix>& cs,
                                  const CcrMatrix& ccr) {
  const Eigen::Index n = ccr.order();
  const ComplexMatrix th = theta_c(ccr);

  const auto factor = [&](const RealMatrix& c) {
    const ComplexMatrix cc = c.cast<Complex>();
    require_symmetric(cc, "symmetric_sandwich");
    require_match(cc, ccr, "symmetric_sandwich");
    return matrix_exp(ComplexMatrix(4.0 * kImag * th * cc));
  };

  double guard = operator_norm(ComplexMatrix(4.0 * kImag * th * c0.cast<Complex>()));
  ComplexMatrix left = ComplexMatrix::Identity(n, n);
  ComplexMatrix right = ComplexMatrix::Identity(n, n);
  for (const auto& c : cs) {
    const ComplexMatrix f = factor(c);
    guard += 2.0 * operator_norm(ComplexMatrix(4.0 * kImag * th * c.cast<Complex>()));
    left = (f * left).eval();    // leftward product: C_N ... C_1
    right = (right * f).eval();  // rightward product: C_1 ... C_N
  }
  const ComplexMatrix product = left * factor(c0) * right;

  const ComplexMatrix g = principal_log(product);
  const ComplexMatrix e = unwrap_generator(g, ccr, "symmetric_sandwich");

  SandwichResult out;
  out.imag_residual = max_abs(RealMatrix(e.imag()));
  out.symmetry_residual = symmetry_residual(e, SymmetryKind::symmetric);
  out.branch_risk = guard >= M_PI;
  const double tol = 1e-9 * (1.0 + max_abs(RealMatrix(e.real())));
  if (out.imag_residual > tol)
    fail(ErrorKind::conjugation_symmetry,
         "symmetric_sandwich: imaginary residual " + std::to_string(out.imag_residual) +
             " exceeds tolerance (branch trouble)");
  RealMatrix er = e.real();
  out.E = 0.5 * (er + er.transpose()).eval();
  return out;
}

Factorization2 factorize_2x2(double a, double b, double theta) {
  if (!(a > 0.0) || !(b > 0.0))
    fail(ErrorKind::domain, "factorize_2x2: a and b must be positive");
  if (theta == 0.0) fail(ErrorKind::domain, "factorize_2x2: theta must be nonzero");

  const double g = std::sqrt(a * b);
  Factorization2 out;
  out.alpha = std::tanh(2.0 * theta * g) * std::sqrt(a / b) / (4.0 * theta);
  out.beta = std::sinh(4.0 * theta * g) * std::sqrt(b / a) / (4.0 * theta);

  const CcrMatrix ccr = CcrMatrix::validate(theta * bj());
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 2), e2 = ComplexMatrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  e2(1, 1) = 1.0;
  const ComplexMatrix lhs =
      exp_map(out.alpha * e1, ccr).S * exp_map(out.beta * e2, ccr).S * exp_map(out.alpha * e1, ccr).S;
  ComplexMatrix target = ComplexMatrix::Zero(2, 2);
  target(0, 0) = a;
  target(1, 1) = b;
  const ComplexMatrix rhs = exp_map(target, ccr).S;
  out.residual = max_abs(ComplexMatrix(lhs - rhs)) / (1.0 + max_abs(rhs));
  return out;
}

}  // namespace qef
