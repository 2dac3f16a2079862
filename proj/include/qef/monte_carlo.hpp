#pragma once

#include <cstdint>

#include "qef/gaussian_state.hpp"
#include "qef/qef_engine.hpp"
#include "qef/rng.hpp"

namespace qef {

struct McEstimate {
  Complex mean;
  double std_error;  // sample std of the complex values / sqrt(samples)
  std::uint64_t samples;
  std::uint64_t seed;
  std::uint64_t rejected;  // non-finite samples skipped
};

// Randomized check of 1/sqrt(1 + Sigma2*sigma2): average of
// exp(-Sigma2 u^2 / 2) over u ~ N(0, sigma2).
McEstimate mc_single_variable(double Sigma2, double sigma2, std::uint64_t samples,
                              std::uint64_t seed);

// Randomized E Y: average of Phi(u) exp(-i u^T diam(Theta) u / 2) over
// u ~ N(0, I_n).
McEstimate mc_product_moment(const GaussianState& state, std::uint64_t samples,
                             std::uint64_t seed);

// Randomized Xi: average of Psi(w) exp(i w^T diam(F J F^T) w / 2) over
// w ~ N(0, mho).  Refuses on infeasible problems (infinite variance)
// unless force is set.
McEstimate mc_qef(const QefProblem& problem, std::uint64_t samples, std::uint64_t seed,
                  bool force = false);
McEstimate mc_qef(const QefProblem& problem, const QefIntermediates& parts,
                  std::uint64_t samples, std::uint64_t seed, bool force = false);

}  // namespace qef
