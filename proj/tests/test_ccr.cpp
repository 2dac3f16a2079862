#include "doctest.h"

#include "qef/ccr.hpp"
#include "test_support.hpp"

using namespace qef;

TEST_CASE("validate accepts antisymmetric matrices and flags singularity") {
  RealMatrix t(2, 2);
  t << 0, 0.5, -0.5, 0;
  const CcrMatrix ok = CcrMatrix::validate(t);
  CHECK_FALSE(ok.is_singular());

  const CcrMatrix zero = CcrMatrix::validate(RealMatrix(RealMatrix::Zero(4, 4)));
  CHECK(zero.is_singular());

  RealMatrix bad(2, 2);
  bad << 0, 1, -0.9, 0;
  CHECK_THROWS_AS((void)CcrMatrix::validate(bad), Error);
}

TEST_CASE("canonicalize recovers the identity gauge on canonical input") {
  const CcrMatrix half = CcrMatrix::validate(RealMatrix(0.5 * bj()));
  const CcrCanonicalization c = canonicalize(half);
  CHECK(c.nu == 1);
  CHECK(max_abs(RealMatrix(c.T - RealMatrix::Identity(2, 2))) < 1e-12);

  const CcrMatrix two = CcrMatrix::validate(RealMatrix(2.0 * bj()));
  const CcrCanonicalization c2 = canonicalize(two);
  CHECK(max_abs(RealMatrix(c2.T - 2.0 * RealMatrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("canonicalize reconstructs random CCR matrices") {
  test::Rng g(21);
  for (int trial = 0; trial < 10; ++trial) {
    const CcrMatrix ccr = test::random_nonsingular_ccr(trial % 2 ? 4 : 6, g);
    const CcrCanonicalization c = canonicalize(ccr);
    const RealMatrix recon = c.T * canonical_j(c.nu) * c.T.transpose();
    CHECK(max_abs(RealMatrix(recon - ccr.theta())) <= 1e-10 * (1.0 + max_abs(ccr.theta())));

    // Inverse congruence lands exactly on the canonical form.
    const RealMatrix ti = c.T.inverse();
    CHECK(max_abs(RealMatrix(ti * ccr.theta() * ti.transpose() - canonical_j(c.nu))) < 1e-9);
  }
}

TEST_CASE("canonicalize is deterministic and orders blocks descending") {
  RealMatrix t = RealMatrix::Zero(4, 4);
  t.topLeftCorner(2, 2) = 1.0 * bj();
  t.bottomRightCorner(2, 2) = 3.0 * bj();
  const CcrMatrix ccr = CcrMatrix::validate(t);
  const CcrCanonicalization a = canonicalize(ccr);
  const CcrCanonicalization b = canonicalize(ccr);
  CHECK(max_abs(RealMatrix(a.T - b.T)) == 0.0);

  // Descending speeds: the leading pair must carry the factor sqrt(2*3).
  const RealMatrix ji = a.T.inverse() * t * a.T.inverse().transpose();
  CHECK(max_abs(RealMatrix(ji - canonical_j(2))) < 1e-12);
  CHECK(a.T.col(0).norm() == doctest::Approx(std::sqrt(6.0)));
  CHECK(a.T.col(2).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("canonicalize rejects singular and odd-order input") {
  CHECK_THROWS_AS((void)canonicalize(CcrMatrix::validate(RealMatrix(RealMatrix::Zero(2, 2)))),
                  Error);
  CHECK_THROWS_AS((void)canonicalize(CcrMatrix::validate(RealMatrix(RealMatrix::Zero(3, 3)))),
                  Error);
}

TEST_CASE("process CCR assembly") {
  const RealMatrix half_bj = 0.5 * bj();

  const ProcessCcr trivial = assemble_process(half_bj, {});
  CHECK(trivial.horizon == 0);
  CHECK(max_abs(RealMatrix(trivial.assembled - half_bj)) == 0.0);

  // Commuting steps give a block diagonal.
  const ProcessCcr decoupled =
      assemble_process(half_bj, {{RealMatrix::Zero(2, 2), half_bj}});
  RealMatrix expect = RealMatrix::Zero(4, 4);
  expect.topLeftCorner(2, 2) = half_bj;
  expect.bottomRightCorner(2, 2) = half_bj;
  CHECK(max_abs(RealMatrix(decoupled.assembled - expect)) == 0.0);

  const ProcessCcr coupled =
      assemble_process(half_bj, {{RealMatrix::Identity(2, 2), half_bj}});
  RealMatrix expect2 = expect;
  expect2.topRightCorner(2, 2) = -RealMatrix::Identity(2, 2);
  expect2.bottomLeftCorner(2, 2) = RealMatrix::Identity(2, 2);
  CHECK(max_abs(RealMatrix(coupled.assembled - expect2)) == 0.0);
  CHECK(symmetry_residual(coupled.assembled, SymmetryKind::antisymmetric) == 0.0);

  CHECK_THROWS_AS((void)assemble_process(half_bj, {{RealMatrix::Zero(2, 3), half_bj}}), Error);
}

TEST_CASE("gauge injection is preserved on the value") {
  test::Rng g(22);
  const CcrMatrix ccr = test::random_nonsingular_ccr(4, g);
  const CcrCanonicalization c = canonicalize(ccr);
  const CcrMatrix tagged = ccr.with_canonicalization(c);
  REQUIRE(tagged.cached_canonicalization());
  CHECK(max_abs(RealMatrix(tagged.cached_canonicalization()->T - c.T)) == 0.0);
  CHECK_FALSE(ccr.cached_canonicalization());
}
