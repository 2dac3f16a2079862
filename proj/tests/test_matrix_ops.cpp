#include "doctest.h"

#include "qef/matrix_ops.hpp"
#include "test_support.hpp"

using namespace qef;

TEST_CASE("diam keeps the diagonal and upper triangle") {
  RealMatrix m(2, 2);
  m << 1, 2, 3, 4;
  RealMatrix expected(2, 2);
  expected << 1, 2, 2, 4;
  CHECK(max_abs(RealMatrix(diam(m) - expected)) == 0.0);
}

TEST_CASE("diam fixes exactly the symmetric matrices") {
  test::Rng g(11);
  const RealMatrix s = test::random_symmetric(5, g);
  CHECK(max_abs(RealMatrix(diam(s) - s)) == 0.0);

  RealMatrix a(2, 2);
  a << 0, 0.7, -0.7, 0;
  const RealMatrix ad = diam(a);
  CHECK(ad(0, 0) == 0.0);
  CHECK(ad(1, 1) == 0.0);
  CHECK(ad(0, 1) == 0.7);
  CHECK(ad(1, 0) == 0.7);
}

TEST_CASE("diam is idempotent and linear") {
  test::Rng g(12);
  const RealMatrix m = test::random_real(6, 6, g);
  const RealMatrix n = test::random_real(6, 6, g);
  CHECK(max_abs(RealMatrix(diam(diam(m)) - diam(m))) == 0.0);
  CHECK(max_abs(RealMatrix(diam(RealMatrix(2.5 * m - 0.5 * n)) -
                           (2.5 * diam(m) - 0.5 * diam(n)))) < 1e-14);
  CHECK_THROWS_AS((void)diam(RealMatrix(RealMatrix::Zero(2, 3))), Error);
}

TEST_CASE("reversal matrix is a symmetric involution") {
  CHECK(reversal(1)(0, 0) == 1.0);
  RealMatrix r2(2, 2);
  r2 << 0, 1, 1, 0;
  CHECK(max_abs(RealMatrix(reversal(2) - r2)) == 0.0);
  const RealMatrix r3 = reversal(3);
  CHECK(max_abs(RealMatrix(r3 * r3 - RealMatrix::Identity(3, 3))) == 0.0);
  CHECK(max_abs(RealMatrix(r3 - r3.transpose())) == 0.0);
  CHECK_THROWS_AS((void)reversal(0), Error);
}

TEST_CASE("upsilon at zero and at a scalar") {
  const ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  CHECK(max_abs(ComplexMatrix(upsilon(z) - ComplexMatrix::Identity(3, 3))) < 1e-15);

  ComplexMatrix one(1, 1);
  one(0, 0) = 1.0;
  CHECK(std::abs(upsilon(one)(0, 0) - (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("exp(Z) = I + Z*upsilon(Z) across scales") {
  test::Rng g(13);
  for (double scale : {0.01, 0.3, 2.0, 8.0}) {
    const ComplexMatrix z = test::random_complex(5, 5, g, scale);
    const ComplexMatrix lhs = matrix_exp(z);
    const ComplexMatrix rhs = ComplexMatrix::Identity(5, 5) + z * upsilon(z);
    CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-9 * (1.0 + max_abs(lhs)));
  }
}

TEST_CASE("upsilon handles singular arguments away from zero") {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(1, 1) = 10.0;  // singular, large norm
  const ComplexMatrix rhs = ComplexMatrix::Identity(2, 2) + z * upsilon(z);
  CHECK(max_abs(ComplexMatrix(matrix_exp(z) - rhs)) < 1e-9 * std::exp(10.0));
}

TEST_CASE("block-triangular exponential identity") {
  test::Rng g(14);
  const ComplexMatrix alpha = test::random_complex(1, 1, g);
  const ComplexMatrix beta = test::random_complex(3, 1, g);
  ComplexMatrix big = ComplexMatrix::Zero(4, 4);
  big.topLeftCorner(1, 1) = alpha;
  big.bottomLeftCorner(3, 1) = beta;
  const ComplexMatrix e = matrix_exp(big);
  CHECK(std::abs(e(0, 0) - std::exp(alpha(0, 0))) < 1e-12);
  const ComplexMatrix expect_lower = beta * upsilon(alpha);
  CHECK(max_abs(ComplexMatrix(e.bottomLeftCorner(3, 1) - expect_lower)) < 1e-12);
  CHECK(max_abs(ComplexMatrix(e.bottomRightCorner(3, 3) - ComplexMatrix::Identity(3, 3))) <
        1e-14);
}

TEST_CASE("principal log basics") {
  CHECK(max_abs(principal_log(ComplexMatrix(ComplexMatrix::Identity(4, 4)))) < 1e-14);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = std::exp(1.0);
  d(1, 1) = std::exp(2.0);
  const ComplexMatrix l = principal_log(d);
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(l(1, 1) - 2.0) < 1e-12);
}

TEST_CASE("principal log round trip for moderate generators") {
  test::Rng g(15);
  for (Eigen::Index n : {2, 6, 12}) {
    ComplexMatrix gen = test::random_complex(n, n, g, 0.2);
    gen *= 0.9 / (1.0 + operator_norm(gen));  // keep the norm below one
    const ComplexMatrix m = matrix_exp(gen);
    const ComplexMatrix back = principal_log(m);
    CHECK(max_abs(ComplexMatrix(back - gen)) < 1e-10 * (1.0 + max_abs(gen)));
  }
}

TEST_CASE("principal log rejects branch cut and singular input") {
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = -1.0;
  neg(1, 1) = 2.0;
  CHECK_THROWS_AS((void)principal_log(neg), Error);

  ComplexMatrix sing = ComplexMatrix::Zero(2, 2);
  sing(1, 1) = 1.0;
  CHECK_THROWS_AS((void)principal_log(sing), Error);
}

TEST_CASE("standard matrix function contracts") {
  CHECK(max_abs(RealMatrix(matrix_exp(RealMatrix(RealMatrix::Zero(3, 3))) -
                           RealMatrix::Identity(3, 3))) == 0.0);

  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = -3.0;
  d(1, 1) = 2.0;
  CHECK(spectral_radius(d) == doctest::Approx(3.0));

  test::Rng g(16);
  const RealMatrix a = test::random_real(2, 2, g);
  const RealMatrix b = test::random_real(3, 3, g);
  const double lhs = det(kron(a, b));
  const double rhs = std::pow(det(a), 3) * std::pow(det(b), 2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("psd square root") {
  test::Rng g(17);
  const RealMatrix p = test::random_spd(5, g);
  const RealMatrix r = matrix_sqrt_psd(p);
  CHECK(max_abs(RealMatrix(r * r - p)) < 1e-10 * (1.0 + max_abs(p)));
  CHECK(symmetry_residual(r, SymmetryKind::symmetric) < 1e-12);

  RealMatrix indef = RealMatrix::Identity(2, 2);
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS((void)matrix_sqrt_psd(indef), Error);

  RealMatrix nan_mat = RealMatrix::Zero(2, 2);
  nan_mat(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)matrix_sqrt_psd(nan_mat), Error);
  CHECK_THROWS_AS((void)matrix_exp(nan_mat), Error);
}
