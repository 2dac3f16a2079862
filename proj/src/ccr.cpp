#include "qef/ccr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qef {

RealMatrix canonical_j(Eigen::Index nu) {
  return 0.5 * kron(RealMatrix::Identity(nu, nu), bj());
}

CcrMatrix CcrMatrix::validate(const RealMatrix& theta, double tol) {
  require_square(theta, "ccr");
  require_finite(theta, "ccr");
  if (tol < 0.0) tol = default_tolerance(theta);
  const double res = symmetry_residual(theta, SymmetryKind::antisymmetric);
  if (res > tol)
    fail(ErrorKind::malformed_ccr,
         "ccr: matrix is not antisymmetric (residual " + std::to_string(res) + ")");

  // Exact antisymmetrization so downstream algebra sees Theta^T = -Theta.
  RealMatrix clean = 0.5 * (theta - theta.transpose());
  bool singular = clean.rows() % 2 != 0;
  if (!singular && clean.rows() > 0) {
    Eigen::EigenSolver<RealMatrix> es(clean, /*computeEigenvectors=*/false);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    const double bottom = es.eigenvalues().cwiseAbs().minCoeff();
    singular = bottom <= 1e-12 * (1.0 + top);
  }
  return CcrMatrix(std::move(clean), singular);
}

CcrMatrix CcrMatrix::with_canonicalization(CcrCanonicalization canon) const {
  CcrMatrix copy = *this;
  copy.canon_ = std::move(canon);
  return copy;
}

namespace detail {

std::pair<RealMatrix, RealVector> skew_canonical(const RealMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) fail(ErrorKind::dimension, "skew_canonical: order must be even");
  const Eigen::Index nu = n / 2;
  const double scale = max_abs(a);

  Eigen::RealSchur<RealMatrix> schur(a);
  if (schur.info() != Eigen::Success)
    fail(ErrorKind::domain, "skew_canonical: Schur decomposition failed");
  RealMatrix q = schur.matrixU();
  const RealMatrix& t = schur.matrixT();

  // For a skew input, T must consist of 2x2 blocks [[0, t], [-t, 0]].
  RealVector thetas(nu);
  Eigen::Index i = 0, k = 0;
  while (i < n) {
    if (i + 1 >= n || std::abs(t(i + 1, i)) <= 1e-13 * (1.0 + scale))
      fail(ErrorKind::singular_ccr, "skew_canonical: zero eigenvalue block");
    double th = 0.5 * (t(i, i + 1) - t(i + 1, i));
    if (th < 0.0) {
      q.col(i).swap(q.col(i + 1));  // flips the block sign
      th = -th;
    }
    thetas(k++) = th;
    i += 2;
  }

  // Sort pairs by descending theta, ties by original block index.
  std::vector<Eigen::Index> order(nu);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return thetas(x) > thetas(y); });
  RealMatrix qs(n, n);
  RealVector ts(nu);
  for (Eigen::Index b = 0; b < nu; ++b) {
    qs.col(2 * b) = q.col(2 * order[b]);
    qs.col(2 * b + 1) = q.col(2 * order[b] + 1);
    ts(b) = thetas(order[b]);
  }

  // Fix the in-plane rotation gauge of every pair: zero the second column
  // at the dominant row and make the first column positive there.
  for (Eigen::Index b = 0; b < nu; ++b) {
    auto v1 = qs.col(2 * b);
    auto v2 = qs.col(2 * b + 1);
    Eigen::Index r = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = v1(j) * v1(j) + v2(j) * v2(j);
      if (w > best + 1e-15) {
        best = w;
        r = j;
      }
    }
    const double norm = std::sqrt(best);
    if (norm <= 0.0) continue;
    const double c = v1(r) / norm, s = v2(r) / norm;
    const RealVector nv1 = c * v1 + s * v2;
    const RealVector nv2 = -s * v1 + c * v2;
    qs.col(2 * b) = nv1;
    qs.col(2 * b + 1) = nv2;
  }

  return {qs, ts};
}

}  // namespace detail

CcrCanonicalization canonicalize(const CcrMatrix& ccr) {
  const Eigen::Index n = ccr.order();
  if (n % 2 != 0) fail(ErrorKind::dimension, "canonicalize: CCR order must be even");
  if (ccr.is_singular()) fail(ErrorKind::singular_ccr, "canonicalize: CCR matrix is singular");

  auto [q, thetas] = detail::skew_canonical(ccr.theta());
  const Eigen::Index nu = n / 2;
  RealMatrix t = q;
  for (Eigen::Index k = 0; k < nu; ++k) {
    const double s = std::sqrt(2.0 * thetas(k));
    t.col(2 * k) *= s;
    t.col(2 * k + 1) *= s;
  }

  const RealMatrix recon = t * canonical_j(nu) * t.transpose();
  const double residual = max_abs(RealMatrix(recon - ccr.theta()));
  if (residual > 1e-10 * (1.0 + max_abs(ccr.theta())))
    fail(ErrorKind::domain, "canonicalize: reconstruction residual " + std::to_string(residual));
  return CcrCanonicalization{std::move(t), nu, residual};
}

ProcessCcr assemble_process(const RealMatrix& theta0, const std::vector<ProcessBlock>& blocks) {
  CcrMatrix base = CcrMatrix::validate(theta0);
  const Eigen::Index n = base.order();
  RealMatrix acc = base.theta();
  Eigen::Index horizon = 0;
  for (const auto& blk : blocks) {
    CcrMatrix tb = CcrMatrix::validate(blk.theta_block);
    if (tb.order() != n)
      fail(ErrorKind::dimension, "assemble_process: theta block order mismatch");
    if (blk.sigma.rows() != n || blk.sigma.cols() != acc.rows())
      fail(ErrorKind::dimension, "assemble_process: sigma must be n x (N*n)");
    const Eigen::Index m = acc.rows();
    RealMatrix next = RealMatrix::Zero(m + n, m + n);
    next.topLeftCorner(m, m) = acc;
    next.topRightCorner(m, n) = -blk.sigma.transpose();
    next.bottomLeftCorner(n, m) = blk.sigma;
    next.bottomRightCorner(n, n) = tb.theta();
    acc.swap(next);
    ++horizon;
  }
  return ProcessCcr{std::move(acc), n, horizon};
}

}  // namespace qef
