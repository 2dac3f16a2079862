#include "qef/monte_carlo.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace qef {

namespace {

// Distinct stream ids keep the estimators decorrelated under a shared seed.
constexpr std::uint32_t kStreamSingle = 1;
constexpr std::uint32_t kStreamProduct = 2;
constexpr std::uint32_t kStreamQef = 3;

McEstimate run_estimator(std::uint64_t samples, std::uint64_t seed, std::uint32_t stream,
                         std::size_t normals_per_sample,
                         const std::function<Complex(const double*)>& integrand) {
  if (samples == 0) fail(ErrorKind::domain, "mc: sample count must be positive");
  NormalStream rng(seed, stream);
  std::vector<double> z(normals_per_sample);
  Complex sum(0.0, 0.0);
  double sum_sq = 0.0;
  std::uint64_t rejected = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng.fill(i, z.data(), z.size());
    const Complex v = integrand(z.data());
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      ++rejected;
      continue;
    }
    sum += v;
    sum_sq += std::norm(v);
  }
  const std::uint64_t used = samples - rejected;
  if (used < 2) fail(ErrorKind::domain, "mc: too many rejected samples");
  McEstimate est;
  est.mean = sum / static_cast<double>(used);
  const double var =
      std::max(0.0, (sum_sq - static_cast<double>(used) * std::norm(est.mean)) /
                        static_cast<double>(used - 1));
  est.std_error = std::sqrt(var / static_cast<double>(used));
  est.samples = samples;
  est.seed = seed;
  est.rejected = rejected;
  return est;
}

}  // namespace

McEstimate mc_single_variable(double Sigma2, double sigma2, std::uint64_t samples,
                              std::uint64_t seed) {
  if (Sigma2 < 0.0 || sigma2 < 0.0)
    fail(ErrorKind::domain, "mc_single_variable: variances must be nonnegative");
  const double sigma = std::sqrt(sigma2);
  return run_estimator(samples, seed, kStreamSingle, 1, [&](const double* z) {
    const double u = sigma * z[0];
    return Complex(std::exp(-0.5 * Sigma2 * u * u), 0.0);
  });
}

McEstimate mc_product_moment(const GaussianState& state, std::uint64_t samples,
                             std::uint64_t seed) {
  const Eigen::Index n = state.order();
  const RealMatrix p = state.covariance_real();
  const RealMatrix theta_diam = diam(state.ccr().theta());
  return run_estimator(samples, seed, kStreamProduct, static_cast<std::size_t>(n),
                       [&](const double* z) {
                         Eigen::Map<const RealVector> u(z, n);
                         const double quad = u.dot(p * u);
                         const double phase = u.dot(theta_diam * u);
                         return std::exp(Complex(-0.5 * quad, -0.5 * phase));
                       });
}

McEstimate mc_qef(const QefProblem& problem, std::uint64_t samples, std::uint64_t seed,
                  bool force) {
  return mc_qef(problem, build_intermediates(problem), samples, seed, force);
}

McEstimate mc_qef(const QefProblem& problem, const QefIntermediates& parts,
                  std::uint64_t samples, std::uint64_t seed, bool force) {
  const RealMatrix mho_re_l = parts.mho_diag.asDiagonal() * parts.re_l;
  const double rho = spectral_radius(mho_re_l);
  if (rho >= 1.0 && !force)
    fail(ErrorKind::infeasible,
         "mc_qef: spectral radius " + std::to_string(rho) +
             " >= 1; the randomized estimator has unbounded variance (use force to override)");

  const Eigen::Index dim = parts.mho_diag.size();
  const RealVector scale = parts.mho_diag.cwiseSqrt();
  const RealMatrix fjf_diam = diam(parts.fjf);
  (void)problem;
  return run_estimator(samples, seed, kStreamQef, static_cast<std::size_t>(dim),
                       [&](const double* z) {
                         Eigen::Map<const RealVector> zv(z, dim);
                         const RealVector w = scale.cwiseProduct(zv);
                         const double grow = w.dot(parts.re_l * w);   // log Psi(w) * 2
                         const double phase = w.dot(fjf_diam * w);
                         return std::exp(Complex(0.5 * grow, 0.5 * phase));
                       });
}

}  // namespace qef
