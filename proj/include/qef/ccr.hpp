#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qef/matrix_ops.hpp"

namespace qef {

inline RealMatrix bj() {
  RealMatrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

// J = (1/2) I_nu (x) bJ, the canonical CCR matrix of nu position/momentum pairs.
RealMatrix canonical_j(Eigen::Index nu);

struct CcrCanonicalization {
  RealMatrix T;     // nonsingular, Theta = T J T^T
  Eigen::Index nu;  // n/2
  double residual;  // max-norm of Theta - T J T^T
};

// Validated real antisymmetric commutator matrix, optionally carrying a
// canonicalization.  The cache is immutable after construction; downstream
// results must not depend on which gauge it holds.
class CcrMatrix {
 public:
  static CcrMatrix validate(const RealMatrix& theta, double tol = -1.0);

  const RealMatrix& theta() const { return theta_; }
  Eigen::Index order() const { return theta_.rows(); }
  bool is_singular() const { return singular_; }

  const std::optional<CcrCanonicalization>& cached_canonicalization() const { return canon_; }
  CcrMatrix with_canonicalization(CcrCanonicalization canon) const;

 private:
  CcrMatrix(RealMatrix theta, bool singular) : theta_(std::move(theta)), singular_(singular) {}

  RealMatrix theta_;
  bool singular_ = false;
  std::optional<CcrCanonicalization> canon_;
};

// Factors Theta = T J T^T through the real Schur canonical form of the
// skew-symmetric matrix.  Blocks are ordered by descending rotation speed
// and gauge-normalized, so the output is deterministic.
CcrCanonicalization canonicalize(const CcrMatrix& ccr);

// Block CCR matrix of a discrete-time process,
// Theta_N = [[Theta_{N-1}, -sigma_N^T], [sigma_N, theta_N]].
struct ProcessCcr {
  RealMatrix assembled;
  Eigen::Index base_order;  // n
  Eigen::Index horizon;     // N
};

struct ProcessBlock {
  RealMatrix sigma;        // n x N*n coupling to the past
  RealMatrix theta_block;  // n x n antisymmetric
};

ProcessCcr assemble_process(const RealMatrix& theta0, const std::vector<ProcessBlock>& blocks);

namespace detail {

// Orthogonal reduction of a real skew-symmetric matrix to
// blockdiag(theta_k * bJ) with theta_k > 0 sorted descending.
// Returns {Q, thetas}; a zero 1x1 block reports the matrix as singular.
std::pair<RealMatrix, RealVector> skew_canonical(const RealMatrix& a);

}  // namespace detail

}  // namespace qef
