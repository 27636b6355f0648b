#pragma once

// Existence and uniqueness checks for the canonical clamped problem: the
// box D_M, the boundedness condition sup|f| <= M/2 on D_M, the contraction
// factor q built from Lipschitz constants, and the a-priori error envelope
// of the successive approximations.

#include <array>
#include <optional>
#include <string>

#include "clampbeam/errors.hpp"
#include "clampbeam/expr.hpp"

namespace clampbeam::analysis {

/// D_M = { x in [0,1], |u| <= M/384, |y| <= M/(72 sqrt 3), |v| <= M, |z| <= M }.
class DomainBox {
 public:
  explicit DomainBox(double M);

  double M() const { return M_; }
  /// Half-widths of the (x, u, y, v, z) axes; x is handled separately as [0,1].
  double u_bound() const;
  double y_bound() const;
  double v_bound() const { return M_; }
  double z_bound() const { return M_; }

  /// Lower and upper end of an axis.
  std::array<double, 2> range(expr::Var var) const;
  bool contains(const expr::Env& p) const;

 private:
  double M_;
};

using Lipschitz = std::array<double, 4>;

/// q = K1/384 + K2/(72 sqrt 3) + K3 + K4. Throws DomainError on negative input.
double contraction_factor(const Lipschitz& K);

enum class Provenance { supplied, symbolic, finite_difference, lattice };

std::string_view to_string(Provenance p);

struct LatticeSpec {
  /// Points per axis; at least 5.
  int points = 9;
  /// Local pattern-search refinement of the best lattice points.
  bool refine = true;
};

struct CheckOptions {
  std::array<std::optional<double>, 4> K;
  /// Certified sup|f| over D_M; estimated on the lattice otherwise.
  std::optional<double> sup_f;
  LatticeSpec lattice;
};

struct ConditionReport {
  double M = 0.0;
  double sup_f = 0.0;
  Provenance sup_f_provenance = Provenance::lattice;
  Lipschitz K{};
  std::array<Provenance, 4> K_provenance{};
  double q = 0.0;
  bool lemma1_ok = false;    // sup_f <= M/2
  bool theorem1_ok = false;  // lemma1_ok and q < 1/2
};

/// f (or one of its partial derivatives) is undefined at a point of D_M.
class UndefinedInDomain : public EvalError {
 public:
  UndefinedInDomain(const std::string& what, expr::Env point);
  const expr::Env& point() const { return point_; }

 private:
  expr::Env point_;
};

/// Estimates sup|f| and the Lipschitz constants over D_M (unless supplied)
/// and evaluates both conditions. Lattice estimates are maxima of sampled
/// values, not certificates.
ConditionReport check_conditions(const expr::Expression& f, double M, const CheckOptions& options = {});

/// p_k = (q + 1/2)^k / (1/2 - q) * first_step and the error bounds it implies.
struct AprioriBound {
  double p = 0.0;
  double u() const;
  double y() const;
  double v() const { return p; }
  double z() const { return p; }
};

AprioriBound apriori_bound(double q, double first_step, int k);

}  // namespace clampbeam::analysis
