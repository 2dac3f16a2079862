#include "qef/qef_engine.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace qef {

namespace {

// sinh(2l)/l with a safe l -> 0 limit of 2.
double sinh2_over(double l) { return l < 1e-8 ? 2.0 + (4.0 / 3.0) * l * l : std::sinh(2.0 * l) / l; }

RealMatrix triple_duplication(Eigen::Index nu) {
  RealMatrix block(3, 2);
  block << 1, 0, 0, 1, 1, 0;
  return kron(RealMatrix::Identity(nu, nu), block);
}

RealVector mho_of(const RealVector& alphas, const RealVector& betas) {
  const Eigen::Index nu = alphas.size();
  RealVector m(3 * nu);
  for (Eigen::Index k = 0; k < nu; ++k) {
    m(3 * k) = 2.0 * alphas(k);
    m(3 * k + 1) = 2.0 * betas(k);
    m(3 * k + 2) = 2.0 * alphas(k);
  }
  return m;
}

}  // namespace

void validate_problem(const QefProblem& problem) {
  const Eigen::Index n = problem.state.order();
  require_square(problem.pi, "qef");
  if (problem.pi.rows() != n) fail(ErrorKind::dimension, "qef: Pi order != state order");
  if (symmetry_residual(problem.pi, SymmetryKind::symmetric) > default_tolerance(problem.pi))
    fail(ErrorKind::domain, "qef: Pi is not symmetric");
  if (!(problem.risk_theta > 0.0)) fail(ErrorKind::domain, "qef: risk scaling must be positive");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(problem.pi, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    fail(ErrorKind::not_positive_definite, "qef: Pi is not positive definite");
  if (problem.state.ccr().is_singular())
    fail(ErrorKind::singular_ccr, "qef: Theta is singular; the canonical form does not exist");
}

QefIntermediates build_intermediates(const QefProblem& problem) {
  const auto& cached = problem.state.ccr().cached_canonicalization();
  const CcrCanonicalization canon = cached ? *cached : canonicalize(problem.state.ccr());
  return build_intermediates(problem, canon);
}

QefIntermediates build_intermediates(const QefProblem& problem,
                                     const CcrCanonicalization& canon) {
  const RealMatrix pi_eff = problem.effective_pi();
  const RealMatrix m = canon.T.transpose() * pi_eff * canon.T;
  return build_intermediates(problem, canon, williamson(m));
}

QefIntermediates build_intermediates(const QefProblem& problem, const CcrCanonicalization& canon,
                                     const WilliamsonDecomposition& will) {
  validate_problem(problem);
  QefIntermediates parts;
  parts.canon = canon;
  parts.will = will;
  const Eigen::Index nu = canon.nu;

  parts.F = triple_duplication(nu);
  parts.alphas.resize(nu);
  parts.betas.resize(nu);
  for (Eigen::Index k = 0; k < nu; ++k) {
    parts.alphas(k) = 0.5 * std::tanh(will.lambdas(k));
    parts.betas(k) = 0.5 * std::sinh(2.0 * will.lambdas(k));
  }
  parts.mho_diag = mho_of(parts.alphas, parts.betas);

  const RealMatrix ti = canon.T.inverse();
  const RealMatrix vi = will.V.inverse();
  parts.mgf_map = parts.F * vi * ti;
  parts.re_l = parts.mgf_map * problem.state.covariance_real() * parts.mgf_map.transpose();
  parts.fjf = parts.F * canonical_j(nu) * parts.F.transpose();
  parts.l = parts.re_l.cast<Complex>() + kImag * parts.fjf.cast<Complex>();
  return parts;
}

QefReport compute_qef(const QefProblem& problem) {
  return compute_qef(problem, build_intermediates(problem));
}

QefReport compute_qef(const QefProblem& problem, const QefIntermediates& parts) {
  const Eigen::Index nu = parts.canon.nu;
  const Eigen::Index dim = 3 * nu;
  const ComplexMatrix l_diam = diam(parts.l);

  QefReport rep;
  rep.lambdas = parts.will.lambdas;

  // Branch of the square root by homotopy Pi -> tau*Pi: the symplectic
  // spectrum scales linearly in tau, V does not change, so only the
  // classical covariance mho moves along the path and det -> 1 at tau = 0.
  const auto det_at = [&](double tau) {
    RealVector a(nu), b(nu);
    for (Eigen::Index k = 0; k < nu; ++k) {
      a(k) = 0.5 * std::tanh(tau * parts.will.lambdas(k));
      b(k) = 0.5 * std::sinh(2.0 * tau * parts.will.lambdas(k));
    }
    const RealVector mho = mho_of(a, b);
    const ComplexMatrix mat = ComplexMatrix::Identity(dim, dim) -
                              mho.cast<Complex>().asDiagonal() * l_diam;
    return det(mat);
  };

  rep.diverged = false;
  int steps = 64;
  double arg_total = 0.0;
  Complex d_final;
  for (;;) {
    arg_total = 0.0;
    Complex prev(1.0, 0.0);  // tau = 0
    bool refine = false;
    bool near_zero = false;
    for (int k = 1; k <= steps; ++k) {
      const Complex cur = det_at(static_cast<double>(k) / steps);
      if (std::abs(cur) < 1e-12) near_zero = true;
      const double delta = std::abs(cur) > 0.0 ? std::arg(cur / prev) : 0.0;
      if (std::abs(delta) > 1.0 && steps < 4096) {
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
    rep.diverged = near_zero;
    d_final = prev;
    break;
  }

  if (std::abs(d_final) < 1e-300) {
    rep.xi = Complex(std::numeric_limits<double>::infinity(), 0.0);
    rep.diverged = true;
  } else {
    rep.xi = std::exp(-kImag * (arg_total / 2.0)) / std::sqrt(std::abs(d_final));
  }
  rep.xi_imag_ratio = std::abs(rep.xi.imag()) / (1.0 + std::abs(rep.xi));

  const RealMatrix mho_re_l = parts.mho_diag.asDiagonal() * parts.re_l;
  rep.rho_re = spectral_radius(mho_re_l);
  rep.feasible = rep.rho_re < 1.0;
  rep.rho_complex = spectral_radius(ComplexMatrix(
      parts.mho_diag.cast<Complex>().asDiagonal() * l_diam));

  auto [suff, value] = sufficient_condition(problem);
  rep.sufficient = suff;
  rep.sufficient_value = value;

  const RealMatrix pp = 2.0 * problem.state.covariance_real() * problem.effective_pi();
  if (spectral_radius(pp) < 1.0) {
    rep.classical = 1.0 / std::sqrt(det(RealMatrix(
                        RealMatrix::Identity(pp.rows(), pp.cols()) - pp)));
    rep.classical_diverged = false;
  } else {
    rep.classical = std::numeric_limits<double>::quiet_NaN();
    rep.classical_diverged = true;
  }
  return rep;
}

std::pair<bool, double> sufficient_condition(const QefProblem& problem) {
  validate_problem(problem);
  const auto& cached = problem.state.ccr().cached_canonicalization();
  const CcrCanonicalization canon = cached ? *cached : canonicalize(problem.state.ccr());
  const RealMatrix pi_eff = problem.effective_pi();
  const WilliamsonDecomposition will = williamson(
      RealMatrix(canon.T.transpose() * pi_eff * canon.T));
  double factor = 0.0;
  for (Eigen::Index k = 0; k < will.lambdas.size(); ++k)
    factor = std::max(factor, sinh2_over(will.lambdas(k)));
  const double rho = spectral_radius(RealMatrix(problem.state.covariance_real() * pi_eff));
  const double value = rho * factor;
  return {value < 1.0, value};
}

double classical_limit(const QefProblem& problem) {
  validate_problem(problem);
  const RealMatrix pp = 2.0 * problem.state.covariance_real() * problem.effective_pi();
  if (spectral_radius(pp) >= 1.0)
    fail(ErrorKind::divergence, "classical_limit: rho(2 P Pi) >= 1, moment diverges");
  return 1.0 / std::sqrt(det(RealMatrix(RealMatrix::Identity(pp.rows(), pp.cols()) - pp)));
}

}  // namespace qef
