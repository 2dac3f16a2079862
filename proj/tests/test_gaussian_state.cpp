#include "doctest.h"

#include "qef/gaussian_state.hpp"
#include "test_support.hpp"

using namespace qef;

namespace {

CcrMatrix half_bj_ccr() { return CcrMatrix::validate(RealMatrix(0.5 * bj())); }

}  // namespace

TEST_CASE("admissibility boundary around the minimal uncertainty state") {
  const CcrMatrix ccr = half_bj_ccr();

  const GaussianState vacuum =
      GaussianState::admissible(RealMatrix(0.5 * RealMatrix::Identity(2, 2)), ccr);
  CHECK(vacuum.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));

  // P = I: eigenvalues of P + i*Theta are 1 -+ 1/2.
  const GaussianState thermal =
      GaussianState::admissible(RealMatrix(RealMatrix::Identity(2, 2)), ccr);
  CHECK(thermal.min_eigenvalue() == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      (void)GaussianState::admissible(RealMatrix(0.4 * RealMatrix::Identity(2, 2)), ccr), Error);
}

TEST_CASE("qcf values and bounds") {
  const CcrMatrix ccr = half_bj_ccr();
  const GaussianState st = GaussianState::admissible(RealMatrix(RealMatrix::Identity(2, 2)), ccr);

  CHECK(st.qcf(RealVector::Zero(2)) == Complex(1.0, 0.0));

  RealVector u(2);
  u << 1, 0;
  CHECK(st.qcf(u).real() == doctest::Approx(std::exp(-0.5)));

  test::Rng g(31);
  for (int k = 0; k < 20; ++k) {
    const RealVector v = test::random_real(2, 1, g, 2.0);
    const Complex phi = st.qcf(v);
    CHECK(std::abs(phi) <= 1.0 + 1e-15);
    CHECK(phi == std::conj(st.qcf(RealVector(-v))));  // Hermitian property
  }
  CHECK_THROWS_AS((void)st.qcf(RealVector::Zero(3)), Error);
}

TEST_CASE("mgf and qcf are mirror quadratics") {
  const CcrMatrix ccr = half_bj_ccr();
  const GaussianState st = GaussianState::admissible(RealMatrix(RealMatrix::Identity(2, 2)), ccr);

  CHECK(st.mgf(RealVector::Zero(2)) == 1.0);
  RealVector u(2);
  u << 1, 0;
  CHECK(st.mgf(u, RealMatrix(RealMatrix::Identity(2, 2))) == doctest::Approx(std::exp(0.5)));

  test::Rng g(32);
  const GaussianState rnd = test::random_admissible_state(ccr, g);
  for (int k = 0; k < 10; ++k) {
    const RealVector v = test::random_real(2, 1, g);
    const double quad = 0.5 * v.dot(rnd.covariance_real() * v);
    CHECK(std::log(rnd.mgf(v)) == doctest::Approx(quad).epsilon(1e-12));
    CHECK(std::log(rnd.qcf(v).real()) == doctest::Approx(-quad).epsilon(1e-12));
  }
}

TEST_CASE("mgf of a linear image uses the congruent covariance") {
  const CcrMatrix ccr = half_bj_ccr();
  test::Rng g(33);
  const GaussianState st = test::random_admissible_state(ccr, g);
  const RealMatrix map = test::random_real(3, 2, g);
  for (int k = 0; k < 5; ++k) {
    const RealVector u = test::random_real(3, 1, g);
    const RealVector v = map.transpose() * u;
    CHECK(st.mgf(u, map) == doctest::Approx(std::exp(0.5 * v.dot(st.covariance_real() * v))));
  }
  CHECK_THROWS_AS((void)st.mgf(RealVector::Zero(2), map), Error);
}

TEST_CASE("admissibility is invariant under joint orthogonal congruence") {
  test::Rng g(34);
  for (Eigen::Index n : {2, 4}) {
    const CcrMatrix ccr = test::random_nonsingular_ccr(n, g);
    const GaussianState st = test::random_admissible_state(ccr, g);

    const Eigen::HouseholderQR<RealMatrix> qr(test::random_real(n, n, g));
    const RealMatrix q = qr.householderQ();
    const RealMatrix p2 = q.transpose() * st.covariance_real() * q;
    const RealMatrix t2 = q.transpose() * ccr.theta() * q;
    CHECK_NOTHROW((void)GaussianState::admissible(p2, CcrMatrix::validate(t2)));
  }
}

TEST_CASE("dimension and symmetry guards") {
  const CcrMatrix ccr = half_bj_ccr();
  CHECK_THROWS_AS(
      (void)GaussianState::admissible(RealMatrix(RealMatrix::Identity(4, 4)), ccr), Error);
  RealMatrix asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS((void)GaussianState::admissible(asym, ccr), Error);
}
