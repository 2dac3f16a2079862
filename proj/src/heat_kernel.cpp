#include "qef/heat_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qef/errors.hpp"

namespace qef {

std::pair<double, double> heat_factor_coefficients(double a, double b) {
  if (a < 0.0 || b < 0.0) fail(ErrorKind::domain, "heat: a and b must be nonnegative");
  if (a * b == 0.0) return {0.5 * a, b};  // limits of the closed forms
  const double g = std::sqrt(a * b);
  return {0.5 * std::tanh(g) * std::sqrt(a / b), 0.5 * std::sinh(2.0 * g) * std::sqrt(b / a)};
}

std::pair<double, double> heat_gamma_bounds(double a, double b) {
  const auto [alpha, beta] = heat_factor_coefficients(a, b);
  const double lo = alpha + alpha / (1.0 + 4.0 * alpha * beta);
  const double hi =
      beta > 0.0 ? alpha + 1.0 / (4.0 * beta) : std::numeric_limits<double>::infinity();
  return {lo, hi};
}

namespace {

struct GaussianParams {
  double gamma;
  double mu;
  double log_sigma;
};

// exp(alpha q^2) acting on sigma * exp(-gamma (q - mu)^2), completed square.
GaussianParams apply_square(const GaussianParams& in, double alpha) {
  GaussianParams out;
  const double g = in.gamma - alpha;
  if (g <= 0.0) fail(ErrorKind::divergence, "heat: Gaussian width lost under exp(alpha q^2)");
  out.gamma = g;
  out.mu = in.gamma * in.mu / g;
  out.log_sigma = in.log_sigma + alpha * in.gamma * in.mu * in.mu / g;
  return out;
}

// exp(beta p^2) = exp(-beta d^2/dq^2): backward heat map on the shape.
GaussianParams apply_backward_heat(const GaussianParams& in, double beta) {
  GaussianParams out;
  const double denom = 1.0 - 4.0 * beta * in.gamma;
  if (denom <= 0.0) fail(ErrorKind::divergence, "heat: Gaussian width lost under the heat map");
  out.gamma = in.gamma / denom;
  out.mu = in.mu;
  out.log_sigma = in.log_sigma - 0.5 * std::log(denom);
  return out;
}

}  // namespace

HeatCheckReport heat_sandwich_check(double a, double b, double gamma, double mu, int t_steps) {
  const auto [alpha, beta] = heat_factor_coefficients(a, b);
  const auto [lo, hi] = heat_gamma_bounds(a, b);
  if (!(gamma > lo && gamma < hi))
    fail(ErrorKind::domain, "heat: gamma = " + std::to_string(gamma) +
                                " outside the admissible interval (" + std::to_string(lo) +
                                ", " + std::to_string(hi) + ")");
  const int steps = std::max(t_steps, 1000);

  // State y = (gamma, gamma*mu, ln(sigma) - gamma*mu^2).
  std::array<double, 3> y = {gamma, gamma * mu, -gamma * mu * mu};
  const auto deriv = [&](const std::array<double, 3>& s) {
    std::array<double, 3> d;
    d[0] = 4.0 * b * s[0] * s[0] - a;
    d[1] = 4.0 * b * s[0] * s[1];
    d[2] = 2.0 * b * s[0] - 4.0 * b * s[1] * s[1];
    return d;
  };
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const auto k1 = deriv(y);
    std::array<double, 3> t2, t3, t4;
    for (int i = 0; i < 3; ++i) t2[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = deriv(t2);
    for (int i = 0; i < 3; ++i) t3[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = deriv(t3);
    for (int i = 0; i < 3; ++i) t4[i] = y[i] + h * k3[i];
    const auto k4 = deriv(t4);
    for (int i = 0; i < 3; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!(std::abs(y[0]) < 1e8) || !std::isfinite(y[0]) || !std::isfinite(y[1]) ||
        !std::isfinite(y[2]))
      fail(ErrorKind::divergence, "heat: Riccati blow-up during integration");
  }

  HeatCheckReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.steps = steps;
  rep.gamma_ode = y[0];
  rep.mu_ode = y[0] != 0.0 ? y[1] / y[0] : 0.0;
  rep.log_sigma_ode = y[2] + y[1] * rep.mu_ode;

  GaussianParams g{gamma, mu, 0.0};
  g = apply_square(g, alpha);
  g = apply_backward_heat(g, beta);
  g = apply_square(g, alpha);
  rep.gamma_closed = g.gamma;
  rep.mu_closed = g.mu;
  rep.log_sigma_closed = g.log_sigma;

  rep.discrepancy = std::max({std::abs(rep.gamma_ode - rep.gamma_closed),
                              std::abs(rep.mu_ode - rep.mu_closed),
                              std::abs(rep.log_sigma_ode - rep.log_sigma_closed)});
  return rep;
}

}  // namespace qef
