#pragma once

#include <utility>

namespace qef {

// Checks e^{a q^2 + b p^2} = e^{alpha q^2} e^{beta p^2} e^{alpha q^2} on
// Gaussian test functions exp(-gamma (q - mu)^2): the left side evolves
// (gamma, gamma*mu, ln(sigma) - gamma*mu^2) through the Riccati ODE system
//   gamma'           = 4 b gamma^2 - a
//   (gamma mu)'      = 4 b gamma^2 mu
//   (ln s - g mu^2)' = 2 b gamma (1 - 2 gamma mu^2)
// from t = 0 to 1; the right side composes the two closed-form Gaussian
// maps (completion of squares and the backward heat kernel).
struct HeatCheckReport {
  double alpha;
  double beta;
  double gamma_ode, mu_ode, log_sigma_ode;
  double gamma_closed, mu_closed, log_sigma_closed;
  double discrepancy;  // max abs difference of the three parameters
  int steps;
};

// alpha = tanh(sqrt(ab)) sqrt(a/b) / 2, beta = sinh(2 sqrt(ab)) sqrt(b/a) / 2
// (the position/momentum convention theta = 1/2); degenerate a*b = 0 uses
// the limits alpha = a/2, beta = b.
std::pair<double, double> heat_factor_coefficients(double a, double b);

// Admissible open interval for gamma: (alpha + alpha/(1+4 alpha beta),
// alpha + 1/(4 beta)).
std::pair<double, double> heat_gamma_bounds(double a, double b);

HeatCheckReport heat_sandwich_check(double a, double b, double gamma, double mu, int t_steps);

}  // namespace qef
