#include "qef/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "qef/fock_oracle.hpp"
#include "qef/heat_kernel.hpp"
#include "qef/lie_quadratic.hpp"
#include "qef/moments.hpp"
#include "qef/monte_carlo.hpp"
#include "qef/problem_io.hpp"
#include "qef/qef_engine.hpp"
#include "qef/recursion.hpp"

namespace qef::cli {

namespace {

struct CommonOpts {
  std::string problem_path;
  std::string out_path;
  std::uint64_t seed = 12345;
  std::uint64_t samples = 1000000;
  Eigen::Index truncation = 80;
  double tol = 1e-6;
  bool force = false;
};

std::string iso_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const RealVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json report_shell(const std::string& command, std::uint64_t seed) {
  Json r = Json::object();
  r["schema_version"] = kSchemaVersion;
  r["tool"] = "qeftool";
  r["version"] = kVersion;
  r["command"] = command;
  r["generated_at"] = iso_timestamp();
  r["seed"] = seed;
  return r;
}

const RealMatrix& demand(const std::optional<RealMatrix>& m, const char* name) {
  if (!m) fail(ErrorKind::input, std::string("problem file: missing field ") + name);
  return *m;
}

GaussianState state_from(const ProblemFile& p) {
  const CcrMatrix ccr = CcrMatrix::validate(demand(p.theta, "theta"));
  return GaussianState::admissible(demand(p.P, "P"), ccr);
}

int emit(const Json& report, const CommonOpts& opts, std::ostream& out, std::ostream& err,
         int code) {
  const std::string text = dump_json_17(report, 2);
  if (!opts.out_path.empty()) {
    std::ofstream f(opts.out_path, std::ios::binary);
    if (!f) {
      err << "cannot write " << opts.out_path << "\n";
      return 1;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

Json qef_outputs(const QefReport& rep) {
  Json o = Json::object();
  o["xi"] = complex_to_json(rep.xi);
  o["feasible"] = rep.feasible;
  o["spectral_radius_re"] = rep.rho_re;
  o["spectral_radius_complex"] = rep.rho_complex;
  o["sufficient_condition"] = rep.sufficient;
  o["sufficient_value"] = rep.sufficient_value;
  if (rep.classical_diverged)
    o["classical_limit"] = nullptr;
  else
    o["classical_limit"] = rep.classical;
  o["classical_diverged"] = rep.classical_diverged;
  o["lambdas"] = vector_to_json(rep.lambdas);
  o["diverged"] = rep.diverged;
  return o;
}

int cmd_qef(const ProblemFile& p, const CommonOpts& opts, Json& report) {
  GaussianState state = state_from(p);
  QefProblem problem{state, demand(p.Pi, "Pi"), p.risk_theta};
  const QefIntermediates parts = build_intermediates(problem);
  const QefReport rep = compute_qef(problem, parts);

  report["outputs"] = qef_outputs(rep);
  Json residuals = Json::object();
  residuals["canonicalization"] = parts.canon.residual;
  residuals["williamson_symplectic"] = parts.will.symplectic_residual;
  residuals["williamson_diagonal"] = parts.will.diagonal_residual;
  residuals["xi_imag_ratio"] = rep.xi_imag_ratio;
  report["residuals"] = residuals;
  Json flags = Json::object();
  flags["feasible"] = rep.feasible;
  flags["diverged"] = rep.diverged;
  flags["degenerate_spectrum"] = parts.will.degenerate;
  report["flags"] = flags;

  if (p.sweep) {
    Json rows = Json::array();
    for (double g : p.sweep->grid) {
      QefProblem scaled{state, problem.pi, g};
      const QefReport r = compute_qef(scaled);
      Json row = Json::object();
      row["risk_theta"] = g;
      row["xi"] = complex_to_json(r.xi);
      row["feasible"] = r.feasible;
      row["spectral_radius_re"] = r.rho_re;
      row["sufficient_value"] = r.sufficient_value;
      if (r.classical_diverged)
        row["classical_limit"] = nullptr;
      else
        row["classical_limit"] = r.classical;
      rows.push_back(std::move(row));
    }
    report["outputs"]["sweep"] = std::move(rows);
  }

  if (!rep.feasible && !opts.force) {
    report["error"] = Json{{"kind", "infeasible"},
                           {"message", "spectral radius condition violated; xi untrusted"}};
    return 2;
  }
  return 0;
}

int cmd_product_moment(const ProblemFile& p, const CommonOpts&, Json& report) {
  GaussianState state = state_from(p);
  const ProductMomentReport rep = product_moments(state);
  Json o = Json::object();
  o["ey"] = complex_to_json(rep.ey);
  o["ey_abs"] = std::abs(rep.ey);
  o["eyy"] = rep.eyy;
  o["eyy_upper_bound"] = rep.upper_bound;
  report["outputs"] = o;
  Json residuals = Json::object();
  residuals["eyy_imag"] = rep.eyy_imag_residual;
  report["residuals"] = residuals;
  Json flags = Json::object();
  flags["bound_satisfied"] = rep.eyy <= rep.upper_bound * (1.0 + 1e-12);
  report["flags"] = flags;
  return 0;
}

int cmd_factorize2(double a, double b, double theta, Json& report) {
  const Factorization2 f = factorize_2x2(a, b, theta);
  Json o = Json::object();
  o["alpha"] = f.alpha;
  o["beta"] = f.beta;
  o["residual"] = f.residual;
  report["outputs"] = o;
  return 0;
}

int cmd_commutator(const ProblemFile& p, Json& report) {
  const CcrMatrix ccr = CcrMatrix::validate(demand(p.theta, "theta"));
  if (!p.A || !p.B) fail(ErrorKind::input, "problem file: commutator needs fields A and B");
  const ComplexMatrix c = quad_commutator(*p.A, *p.B, ccr);
  Json o = Json::object();
  o["C"] = complex_matrix_to_json(c);
  report["outputs"] = o;
  return 0;
}

int cmd_product(const ProblemFile& p, Json& report) {
  const CcrMatrix ccr = CcrMatrix::validate(demand(p.theta, "theta"));
  if (p.Cs.empty()) fail(ErrorKind::input, "problem file: product needs a nonempty Cs list");
  const QuadraticProductResult r = product_chain(p.Cs, ccr);
  Json o = Json::object();
  o["E"] = complex_matrix_to_json(r.E);
  report["outputs"] = o;
  Json residuals = Json::object();
  residuals["symmetry"] = r.symmetry_residual;
  residuals["exp_check"] = r.exp_residual;
  report["residuals"] = residuals;
  report["flags"] = Json{{"branch_risk", r.branch_risk}};
  return 0;
}

int cmd_recursion(const ProblemFile& p, Json& report) {
  const CcrMatrix theta0 = CcrMatrix::validate(demand(p.theta, "theta"));
  if (p.weights.empty())
    fail(ErrorKind::input, "problem file: recursion needs a nonempty weights list");
  const Eigen::Index n = theta0.order();

  const WeightEntry& w0 = p.weights.front();
  const RealMatrix c0 = w0.C ? *w0.C : *w0.D;  // C_0 = D_0 at the root
  RecursionState state = RecursionState::initial(c0, theta0);

  Json steps = Json::array();
  for (std::size_t k = 1; k < p.weights.size(); ++k) {
    const WeightEntry& w = p.weights[k];
    const RealMatrix sigma =
        w.sigma ? *w.sigma : RealMatrix(RealMatrix::Zero(n, state.theta().rows()));
    if (!w.theta_block)
      fail(ErrorKind::input,
           "weights[" + std::to_string(k) + "]: theta_block is required after step 0");
    state = w.C ? state.step_general(*w.C, sigma, *w.theta_block)
                : state.step_current(*w.D, sigma, *w.theta_block);
    Json s = Json::object();
    s["N"] = state.horizon();
    s["imag_residual"] = state.imag_residual();
    s["asym_residual"] = state.asym_residual();
    s["branch_risk"] = state.branch_risk();
    steps.push_back(std::move(s));
  }

  Json o = Json::object();
  o["horizon"] = state.horizon();
  o["Pi"] = real_matrix_to_json(state.pi());
  o["steps"] = std::move(steps);
  report["outputs"] = o;
  Json residuals = Json::object();
  residuals["symplectic_image"] = state.symplectic_residual();
  report["residuals"] = residuals;
  report["flags"] = Json{{"branch_risk", state.branch_risk()}};
  return 0;
}

int cmd_oracle_check(const ProblemFile& p, const CommonOpts& opts, Json& report) {
  GaussianState state = state_from(p);
  const Eigen::Index n = state.order();
  bool all_pass = true;
  Json rows = Json::array();

  const auto push = [&](const std::string& name, Complex value, Complex reference,
                        double tolerance, const char* kind) {
    const double difference = std::abs(value - reference);
    const bool pass = difference <= tolerance;
    all_pass = all_pass && pass;
    Json row = Json::object();
    row["name"] = name;
    row["kind"] = kind;
    row["value"] = complex_to_json(value);
    row["reference"] = complex_to_json(reference);
    row["difference"] = difference;
    row["tolerance"] = tolerance;
    row["pass"] = pass;
    rows.push_back(std::move(row));
  };

  const bool fock_ok = n <= 4;
  std::unique_ptr<FockOscillator> osc;
  if (fock_ok) {
    osc = std::make_unique<FockOscillator>(state.ccr(), opts.truncation);
    osc->set_state(state.covariance_real());
  }

  // Product moments.
  {
    const Complex ey = product_moment_ey(state);
    const McEstimate mc = mc_product_moment(state, opts.samples, opts.seed);
    push("ey_vs_mc", ey, mc.mean, 3.0 * mc.std_error + 1e-12, "mc");
    if (osc) {
      std::vector<ComplexMatrix> factors;
      for (Eigen::Index k = 0; k < n; ++k) {
        ComplexMatrix c = ComplexMatrix::Zero(n, n);
        c(k, k) = -0.5;
        factors.push_back(std::move(c));
      }
      const Complex ey_fock = osc->expectation(factors);
      push("ey_vs_fock", ey, ey_fock, opts.tol, "fock");

      const ProductMomentReport pm = product_moment_eyy(state);
      std::vector<ComplexMatrix> both = factors;
      for (Eigen::Index k = n - 1; k >= 0; --k) both.push_back(factors[static_cast<std::size_t>(k)]);
      const Complex eyy_fock = osc->expectation(both);
      push("eyy_vs_fock", Complex(pm.eyy, 0.0), eyy_fock, opts.tol, "fock");

      RealVector u(n);
      for (Eigen::Index k = 0; k < n; ++k)
        u(k) = 0.8 * static_cast<double>(k + 1) / static_cast<double>(n);
      const double weyl_res = osc->verify_weyl_factorization(u);
      push("weyl_factorization", Complex(weyl_res, 0.0), Complex(0.0, 0.0),
           std::max(opts.tol, 1e-6), "fock");
    }
  }

  // Quadratic-exponential functional.
  if (p.Pi) {
    QefProblem problem{state, *p.Pi, p.risk_theta};
    const QefIntermediates parts = build_intermediates(problem);
    const QefReport rep = compute_qef(problem, parts);
    report["outputs"]["qef"] = qef_outputs(rep);
    if (rep.feasible || opts.force) {
      const McEstimate mc = mc_qef(problem, parts, opts.samples, opts.seed, opts.force);
      push("xi_vs_mc", rep.xi, mc.mean, 3.0 * mc.std_error + 1e-12, "mc");
    }
    if (osc && parts.canon.nu == 1) {
      const Complex xi_fock =
          osc->expectation({problem.effective_pi().cast<Complex>()});
      push("xi_vs_fock", rep.xi, xi_fock, opts.tol, "fock");
    }
  }

  if (osc) report["outputs"]["fock_ccr_residual"] = osc->ccr_residual();
  report["outputs"]["checks"] = std::move(rows);
  report["flags"] = Json{{"all_pass", all_pass}};
  return all_pass ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quadratic-exponential moments of Gaussian quantum states"};
  app.require_subcommand(1);
  CommonOpts opts;

  const auto add_common = [&](CLI::App* sub, bool with_problem = true) {
    if (with_problem)
      sub->add_option("--problem", opts.problem_path, "problem file (JSON)")->required();
    sub->add_option("--out", opts.out_path, "write the report to this path");
    sub->add_option("--seed", opts.seed, "RNG seed");
    sub->add_option("--samples", opts.samples, "Monte Carlo sample count");
    sub->add_option("--truncation", opts.truncation, "Fock truncation per mode");
    sub->add_option("--tol", opts.tol, "comparison tolerance");
    sub->add_flag("--force", opts.force, "override infeasibility refusals");
  };

  CLI::App* c_qef = app.add_subcommand("qef", "compute Xi = E exp(X^T Pi X)");
  add_common(c_qef);
  CLI::App* c_pm = app.add_subcommand("product-moment", "compute E Y and E Y Y^dagger");
  add_common(c_pm);

  double f_a = 0.0, f_b = 0.0, f_theta = 0.5;
  CLI::App* c_f2 = app.add_subcommand("factorize2", "order-2 symplectic factorization");
  c_f2->add_option("--a", f_a)->required();
  c_f2->add_option("--b", f_b)->required();
  c_f2->add_option("--theta", f_theta)->required();
  add_common(c_f2, /*with_problem=*/false);

  CLI::App* c_comm = app.add_subcommand("commutator", "commutator of two quadratic forms");
  add_common(c_comm);
  CLI::App* c_prod = app.add_subcommand("product", "merge a chain of quadratic exponentials");
  add_common(c_prod);
  CLI::App* c_rec = app.add_subcommand("recursion", "multiplicative-to-single-exponential recursion");
  add_common(c_rec);
  CLI::App* c_oc = app.add_subcommand("oracle-check", "cross-validate against brute-force oracles");
  add_common(c_oc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help() << "\n";
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  std::string command;
  for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
  Json report = report_shell(command, opts.seed);

  try {
    ProblemFile problem;
    if (!opts.problem_path.empty()) {
      problem = load_problem(opts.problem_path);
      report["inputs"] = problem.echo();
      report["inputs_digest"] = problem.digest();
    }
    int code = 0;
    if (c_qef->parsed()) code = cmd_qef(problem, opts, report);
    else if (c_pm->parsed()) code = cmd_product_moment(problem, opts, report);
    else if (c_f2->parsed()) code = cmd_factorize2(f_a, f_b, f_theta, report);
    else if (c_comm->parsed()) code = cmd_commutator(problem, report);
    else if (c_prod->parsed()) code = cmd_product(problem, report);
    else if (c_rec->parsed()) code = cmd_recursion(problem, report);
    else if (c_oc->parsed()) code = cmd_oracle_check(problem, opts, report);
    return emit(report, opts, out, err, code);
  } catch (const Error& e) {
    report["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    const int code = e.kind() == ErrorKind::input ? 1 : 2;
    return emit(report, opts, out, err, code);
  } catch (const std::exception& e) {
    report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    return emit(report, opts, out, err, 2);
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qef::cli
