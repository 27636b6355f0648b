#include "clampbeam/solver.hpp"

#include <cmath>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"
#include "clampbeam/kernels.hpp"

namespace clampbeam {

using numerics::diff5;
using numerics::simpson;
using numerics::solve_second_order_bvp;
using numerics::sup_norm;

double triplet_norm(const Triplet& w) { return sup_norm(w.phi) + std::abs(w.alpha) + std::abs(w.beta); }

Triplet operator-(const Triplet& a, const Triplet& b) {
  return {a.phi - b.phi, a.alpha - b.alpha, a.beta - b.beta};
}

void SolverConfig::validate() const {
  Grid{n};
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (divergence_window < 1) throw ConfigError("divergence window must be at least 1");
}

namespace {

void require_finite(const GridFunction& f, const char* what) {
  if (!f.all_finite()) throw SolverError(fmt::format("non-finite value in {}", what));
}

struct Weights {
  GridFunction h0;
  GridFunction h1;
};

Weights weights_on(const Grid& grid) {
  return {GridFunction::sample(grid, kernels::h0), GridFunction::sample(grid, kernels::h1)};
}

}  // namespace

Triplet init_state(const CanonicalProblem& problem, const Grid& grid) {
  GridFunction phi(grid);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    try {
      phi[i] = problem(grid.node(i), 0.0, 0.0, 0.0, 0.0);
    } catch (const EvalError& err) {
      throw EvalError(fmt::format("rhs at node {} (x={}): {}", i, grid.node(i), err.what()));
    }
  }
  return {std::move(phi), 0.0, 0.0};
}

IterateProfile profile_of(const Triplet& state) {
  GridFunction v = solve_second_order_bvp(state.phi, state.alpha, state.beta);
  GridFunction u = solve_second_order_bvp(v, 0.0, 0.0);
  GridFunction y = diff5(u);
  GridFunction z = diff5(v);
  IterateProfile p{std::move(u), std::move(y), std::move(v), std::move(z)};
  require_finite(p.u, "u");
  require_finite(p.y, "u'");
  require_finite(p.v, "u''");
  require_finite(p.z, "u'''");
  return p;
}

GridFunction nonlinear_term(const CanonicalProblem& problem, const IterateProfile& p) {
  const Grid& grid = p.u.grid();
  GridFunction phi(grid);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double x = grid.node(i);
    try {
      phi[i] = problem(x, p.u[i], p.y[i], p.v[i], p.z[i]);
    } catch (const EvalError& err) {
      throw EvalError(fmt::format("rhs at node {} (x={}, u={}, y={}, v={}, z={}): {}", i, x, p.u[i],
                                  p.y[i], p.v[i], p.z[i], err.what()));
    }
  }
  return phi;
}

namespace {

StepResult step_with(const Triplet& state, const CanonicalProblem& problem, const Weights& w) {
  IterateProfile profile = profile_of(state);
  GridFunction phi = nonlinear_term(problem, profile);
  const double alpha = 3.0 * simpson(hadamard(w.h0, phi)) - state.beta / 2.0;
  const double beta = 3.0 * simpson(hadamard(w.h1, phi)) - alpha / 2.0;
  return {Triplet{std::move(phi), alpha, beta}, std::move(profile)};
}

}  // namespace

StepResult step(const Triplet& state, const CanonicalProblem& problem) {
  return step_with(state, problem, weights_on(state.phi.grid()));
}

double residual(const Triplet& state, const CanonicalProblem& problem) {
  const Weights w = weights_on(state.phi.grid());
  const IterateProfile profile = profile_of(state);
  const GridFunction phi = nonlinear_term(problem, profile);
  const double left = simpson(hadamard(w.h0, state.phi)) - (state.beta / 6.0 + state.alpha / 3.0);
  const double right = -simpson(hadamard(w.h1, state.phi)) + (state.beta / 3.0 + state.alpha / 6.0);
  return sup_norm(state.phi - phi) + std::abs(left) + std::abs(right);
}

SolveReport solve(const CanonicalProblem& problem, const SolverConfig& config,
                  const std::optional<GridFunction>& exact) {
  config.validate();
  const Grid grid(config.n);
  if (exact && !(exact->grid() == grid)) throw ConfigError("exact solution sampled on a different grid");

  const Weights w = weights_on(grid);
  SolveReport report(grid);
  Triplet state = init_state(problem, grid);
  GridFunction previous_u(grid);
  int increases = 0;

  for (int k = 1; k <= config.max_iter; ++k) {
    StepResult r = step_with(state, problem, w);
    if (k == 1) report.first_step = triplet_norm(r.next - state);

    const double e = sup_norm(r.profile.u - previous_u);
    if (!report.e_history.empty()) {
      increases = e > report.e_history.back() ? increases + 1 : 0;
    }
    report.e_history.push_back(e);
    if (exact) report.eu_history.push_back(sup_norm(r.profile.u - *exact));

    previous_u = r.profile.u;
    report.iterations = k;
    report.profile = std::move(r.profile);
    report.state = std::move(r.next);
    state = report.state;

    if (e <= config.tol) {
      report.status = SolveStatus::converged;
      break;
    }
    if (increases >= config.divergence_window) {
      report.status = SolveStatus::diverged;
      break;
    }
    report.status = SolveStatus::max_iterations;
  }
  report.residual = residual(report.state, problem);
  return report;
}

}  // namespace clampbeam
