#pragma once

// Successive approximation of the triplet (phi, alpha, beta), where phi is
// the nonlinear term f(x, u, u', u'', u''') sampled on the grid and
// alpha = u''(0), beta = u''(1). Each step solves v'' = phi with v(0) = alpha,
// v(1) = beta, then u'' = v with u(0) = u(1) = 0, and updates the triplet.

#include <optional>
#include <vector>

#include "clampbeam/grid.hpp"
#include "clampbeam/problem.hpp"

namespace clampbeam {

struct Triplet {
  GridFunction phi;
  double alpha = 0.0;
  double beta = 0.0;
};

/// ||phi||_inf + |alpha| + |beta|
double triplet_norm(const Triplet& w);
Triplet operator-(const Triplet& a, const Triplet& b);

/// u_k and its first three derivatives.
struct IterateProfile {
  GridFunction u;
  GridFunction y;
  GridFunction v;
  GridFunction z;
};

struct SolverConfig {
  int n = 100;
  /// Stopping threshold on e(k) = ||u_k - u_{k-1}||.
  double tol = 1e-15;
  int max_iter = 200;
  /// Divergence is declared after this many consecutive increases of e(k).
  int divergence_window = 5;

  void validate() const;
};

enum class SolveStatus { converged, max_iterations, diverged };

struct SolveReport {
  explicit SolveReport(const Grid& grid)
      : profile{GridFunction(grid), GridFunction(grid), GridFunction(grid), GridFunction(grid)},
        state{GridFunction(grid), 0.0, 0.0} {}

  SolveStatus status = SolveStatus::max_iterations;
  bool converged() const { return status == SolveStatus::converged; }

  int iterations = 0;
  /// e(1..K). e(1) measures u_1 against the zero function.
  std::vector<double> e_history;
  /// eu(1..K); empty unless an exact solution was supplied.
  std::vector<double> eu_history;
  /// ||omega_1 - omega_0||, the first triplet step used in the a-priori bound.
  double first_step = 0.0;

  IterateProfile profile;
  /// Triplet after the last update, i.e. A applied to the triplet that produced `profile`.
  Triplet state;
  double residual = 0.0;
};

/// phi_i = f(x_i, 0, 0, 0, 0), alpha = beta = 0.
Triplet init_state(const CanonicalProblem& problem, const Grid& grid);

/// The two chained second-order solves plus derivative recovery.
IterateProfile profile_of(const Triplet& state);

/// f(x_i, u_i, y_i, v_i, z_i) at every node; throws EvalError naming the node.
GridFunction nonlinear_term(const CanonicalProblem& problem, const IterateProfile& profile);

struct StepResult {
  Triplet next;
  IterateProfile profile;
};

/// One application of the iteration map.
StepResult step(const Triplet& state, const CanonicalProblem& problem);

/// Residual of the reduced system for the triplet: the phi equation in the
/// sup norm plus the two boundary conditions u'(0) = u'(1) = 0 written
/// through the integrals of h0 phi and h1 phi.
double residual(const Triplet& state, const CanonicalProblem& problem);

/// Iterates until e(k) <= tol, max_iter, or divergence. Rhs evaluation
/// failures and non-finite iterates propagate as exceptions.
SolveReport solve(const CanonicalProblem& problem, const SolverConfig& config,
                  const std::optional<GridFunction>& exact = std::nullopt);

}  // namespace clampbeam
