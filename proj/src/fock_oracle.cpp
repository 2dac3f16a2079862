#include "qef/fock_oracle.hpp"

#include <cmath>
#include <string>

namespace qef {

namespace {

constexpr Eigen::Index kMaxDim = 4096;

}  // namespace

FockOscillator::FockOscillator(const CcrMatrix& ccr, Eigen::Index truncation) : ccr_(ccr) {
  if (truncation < 8) fail(ErrorKind::domain, "fock: truncation must be at least 8");
  const CcrCanonicalization canon =
      ccr.cached_canonicalization() ? *ccr.cached_canonicalization() : canonicalize(ccr);
  t_ = canon.T;
  nu_ = canon.nu;
  trunc_ = truncation;
  dim_ = 1;
  for (Eigen::Index k = 0; k < nu_; ++k) {
    dim_ *= trunc_;
    if (dim_ > kMaxDim)
      fail(ErrorKind::domain, "fock: truncation^modes exceeds the dense-matrix budget");
  }

  // Ladder matrix a|m> = sqrt(m)|m-1>, then q = (a + a^T)/sqrt(2),
  // p = (a - a^dagger)/(i sqrt(2)); this realizes [q, p] = i, i.e. the
  // canonical pair CCR matrix bJ/2.
  RealMatrix ladder = RealMatrix::Zero(trunc_, trunc_);
  for (Eigen::Index m = 1; m < trunc_; ++m) ladder(m - 1, m) = std::sqrt(static_cast<double>(m));
  q_small_ = ((ladder + ladder.transpose()) / std::sqrt(2.0)).cast<Complex>();
  p_small_ = (ladder - ladder.transpose()).cast<Complex>() * (kImag / std::sqrt(2.0));

  set_vacuum();
}

ComplexMatrix FockOscillator::embed(Eigen::Index mode, const ComplexMatrix& local) const {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (Eigen::Index k = 0; k < nu_; ++k)
    out = kron(out, k == mode ? local : ComplexMatrix(ComplexMatrix::Identity(trunc_, trunc_)));
  return out;
}

ComplexMatrix FockOscillator::embed_pair(Eigen::Index mode_a, const ComplexMatrix& la,
                                         Eigen::Index mode_b, const ComplexMatrix& lb) const {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (Eigen::Index k = 0; k < nu_; ++k) {
    if (k == mode_a)
      out = kron(out, la);
    else if (k == mode_b)
      out = kron(out, lb);
    else
      out = kron(out, ComplexMatrix(ComplexMatrix::Identity(trunc_, trunc_)));
  }
  return out;
}

ComplexMatrix FockOscillator::z_single(Eigen::Index a) const {
  return embed(a / 2, (a % 2 == 0) ? q_small_ : p_small_);
}

ComplexMatrix FockOscillator::z_product(Eigen::Index a, Eigen::Index b) const {
  const Eigen::Index ma = a / 2, mb = b / 2;
  const ComplexMatrix& la = (a % 2 == 0) ? q_small_ : p_small_;
  const ComplexMatrix& lb = (b % 2 == 0) ? q_small_ : p_small_;
  if (ma == mb) return embed(ma, ComplexMatrix(la * lb));
  return embed_pair(ma, la, mb, lb);  // different modes commute
}

ComplexMatrix FockOscillator::quadratic_operator(const ComplexMatrix& c) const {
  require_square(c, "fock.quadratic_operator");
  if (c.rows() != 2 * nu_) fail(ErrorKind::dimension, "fock: coefficient order != 2*modes");
  const ComplexMatrix m = t_.transpose().cast<Complex>() * c * t_.cast<Complex>();
  ComplexMatrix op = ComplexMatrix::Zero(dim_, dim_);
  for (Eigen::Index a = 0; a < 2 * nu_; ++a)
    for (Eigen::Index b = 0; b < 2 * nu_; ++b) {
      if (std::abs(m(a, b)) == 0.0) continue;
      op += m(a, b) * z_product(a, b);
    }
  return op;
}

ComplexMatrix FockOscillator::exp_hermitian(const ComplexMatrix& h, Complex prefactor) const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) fail(ErrorKind::domain, "fock: eigensolver failed");
  ComplexVector phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(prefactor * es.eigenvalues()(i));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix FockOscillator::exp_quadratic(const ComplexMatrix& c) const {
  const ComplexMatrix op = quadratic_operator(c);
  if (max_abs(RealMatrix(c.imag())) <= 1e-14 * (1.0 + max_abs(c)) &&
      symmetry_residual(op, SymmetryKind::hermitian) <= default_tolerance(op)) {
    const ComplexMatrix herm = 0.5 * (op + op.adjoint());
    return exp_hermitian(herm, Complex(1.0, 0.0));
  }
  return matrix_exp(op);
}

Complex FockOscillator::expectation(const std::vector<ComplexMatrix>& exponents) const {
  if (exponents.empty()) return Complex(1.0, 0.0);  // Tr rho
  ComplexMatrix prod = exp_quadratic(exponents.front());
  for (std::size_t k = 1; k < exponents.size(); ++k)
    prod = (prod * exp_quadratic(exponents[k])).eval();
  return expectation_op(prod);
}

Complex FockOscillator::expectation_op(const ComplexMatrix& op) const {
  return (rho_.transpose().cwiseProduct(op)).sum();
}

void FockOscillator::set_vacuum() { set_state(RealMatrix(0.5 * t_ * t_.transpose())); }

void FockOscillator::set_state(const RealMatrix& p) {
  GaussianState state = GaussianState::admissible(p, ccr_);
  p_ = state.covariance_real();

  // Covariance in quadrature coordinates; admissibility with nonsingular
  // Theta makes it positive definite with symplectic spectrum >= 1/2.
  const RealMatrix ti = t_.inverse();
  const RealMatrix pz = ti * p_ * ti.transpose();
  const WilliamsonDecomposition will = williamson(pz);

  // Thermal occupation per canonical mode.
  RealVector zeta(nu_);
  for (Eigen::Index k = 0; k < nu_; ++k) {
    const double lam = std::max(will.lambdas(k), 0.5);
    zeta(k) = (lam - 0.5) / (lam + 0.5);
  }
  ComplexMatrix rho_th = ComplexMatrix::Identity(1, 1);
  for (Eigen::Index k = 0; k < nu_; ++k) {
    RealVector w(trunc_);
    double z = 1.0;
    for (Eigen::Index m = 0; m < trunc_; ++m) {
      w(m) = z;
      z *= zeta(k);
    }
    w /= w.sum();  // normalize within the truncation
    ComplexMatrix local = ComplexMatrix::Zero(trunc_, trunc_);
    local.diagonal() = w.cast<Complex>();
    rho_th = kron(rho_th, local);
  }

  // Gaussian unitary for the symplectic map S = V^{-T} via its polar
  // factors: S = Q R with Q symplectic orthogonal and R symplectic SPD;
  // each factor is exp(2 J H) for a real symmetric H.
  const RealMatrix s = will.V.inverse().transpose();
  const Eigen::Index n = 2 * nu_;
  const RealMatrix omega = 2.0 * canonical_j(nu_);

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(RealMatrix(s.transpose() * s));
  const RealVector loggs = es.eigenvalues().array().log().matrix();
  const RealMatrix b_log =
      0.5 * es.eigenvectors() * loggs.asDiagonal() * es.eigenvectors().transpose();
  const RealMatrix r_pd =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const RealMatrix q_orth = s * r_pd.inverse();

  RealMatrix a_log;
  {
    const ComplexMatrix lg = principal_log(q_orth.cast<Complex>());
    a_log = lg.real();
    if (max_abs(ComplexMatrix(matrix_exp(RealMatrix(a_log)).cast<Complex>() -
                              q_orth.cast<Complex>())) > 1e-8)
      fail(ErrorKind::branch_cut, "fock: orthogonal factor has no convenient real log");
  }

  const RealMatrix h_q = -omega * a_log;
  const RealMatrix h_r = -omega * b_log;
  if (symmetry_residual(h_q, SymmetryKind::symmetric) > 1e-8 * (1.0 + max_abs(h_q)) ||
      symmetry_residual(h_r, SymmetryKind::symmetric) > 1e-8 * (1.0 + max_abs(h_r)))
    fail(ErrorKind::domain, "fock: generator is not a quadratic Hamiltonian");

  const auto gaussian_unitary = [&](const RealMatrix& h) {
    ComplexMatrix ham = ComplexMatrix::Zero(dim_, dim_);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        if (h(a, b) == 0.0) continue;
        ham += Complex(h(a, b), 0.0) * z_product(a, b);
      }
    ham = 0.5 * (ham + ham.adjoint()).eval();
    return exp_hermitian(ham, Complex(0.0, -0.5));  // exp(-i/2 Z^T H Z)
  };

  ComplexMatrix u = gaussian_unitary(h_q) * gaussian_unitary(h_r);
  rho_ = u * rho_th * u.adjoint();
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  rho_ /= rho_.trace().real();
}

ComplexMatrix FockOscillator::measured_z_covariance() const {
  const Eigen::Index n = 2 * nu_;
  ComplexMatrix cov(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) cov(a, b) = expectation_op(z_product(a, b));
  return cov;
}

ComplexMatrix FockOscillator::weyl(const RealVector& u) const {
  if (u.size() != 2 * nu_) fail(ErrorKind::dimension, "fock.weyl: argument length mismatch");
  const RealVector w = t_.transpose() * u;  // u^T X = (T^T u)^T Z
  ComplexMatrix h = ComplexMatrix::Zero(dim_, dim_);
  for (Eigen::Index a = 0; a < 2 * nu_; ++a) {
    if (w(a) == 0.0) continue;
    h += Complex(w(a), 0.0) * z_single(a);
  }
  h = 0.5 * (h + h.adjoint()).eval();
  return exp_hermitian(h, kImag);
}

double FockOscillator::verify_weyl_factorization(const RealVector& u, Eigen::Index margin) const {
  const ComplexMatrix lhs = weyl(u);
  const Eigen::Index n = 2 * nu_;
  const RealMatrix theta_diam = diam(ccr_.theta());
  ComplexMatrix rhs =
      std::exp(kImag * 0.5 * u.dot(theta_diam * u)) * ComplexMatrix::Identity(dim_, dim_);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (u(k) == 0.0) continue;
    RealVector sel = RealVector::Zero(n);
    sel(k) = u(k);
    rhs = (rhs * weyl(sel)).eval();
  }
  return safe_block_frobenius(lhs, rhs, margin);
}

std::vector<bool> FockOscillator::safe_mask(Eigen::Index margin) const {
  std::vector<bool> ok(static_cast<std::size_t>(dim_), true);
  const Eigen::Index cut = trunc_ - margin;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    Eigen::Index rest = i;
    for (Eigen::Index k = 0; k < nu_; ++k) {
      const Eigen::Index level = rest % trunc_;
      rest /= trunc_;
      if (level >= cut) {
        ok[static_cast<std::size_t>(i)] = false;
        break;
      }
    }
  }
  return ok;
}

double FockOscillator::safe_block_max(const ComplexMatrix& a, const ComplexMatrix& b,
                                      Eigen::Index margin) const {
  const std::vector<bool> ok = safe_mask(margin);
  double out = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    if (!ok[static_cast<std::size_t>(i)]) continue;
    for (Eigen::Index j = 0; j < dim_; ++j) {
      if (!ok[static_cast<std::size_t>(j)]) continue;
      out = std::max(out, std::abs(a(i, j) - b(i, j)));
    }
  }
  return out;
}

double FockOscillator::safe_block_frobenius(const ComplexMatrix& a, const ComplexMatrix& b,
                                            Eigen::Index margin) const {
  const std::vector<bool> ok = safe_mask(margin);
  double out = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    if (!ok[static_cast<std::size_t>(i)]) continue;
    for (Eigen::Index j = 0; j < dim_; ++j) {
      if (!ok[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(a(i, j) - b(i, j));
      out += d * d;
    }
  }
  return std::sqrt(out);
}

double FockOscillator::ccr_residual(Eigen::Index margin) const {
  const Eigen::Index n = 2 * nu_;
  const RealMatrix j2 = 2.0 * canonical_j(nu_);
  double out = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const ComplexMatrix comm = z_product(a, b) - z_product(b, a);
      const ComplexMatrix expect =
          kImag * j2(a, b) * ComplexMatrix::Identity(dim_, dim_);
      out = std::max(out, safe_block_max(comm, expect, margin));
    }
  return out;
}

}  // namespace qef
