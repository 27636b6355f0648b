#pragma once

// Raw Dirichlet problems w'''' = F(t, w, w', w'', w''') on [a,b] and their
// reduction to the homogeneous clamped problem on [0,1].

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "clampbeam/expr.hpp"
#include "clampbeam/grid.hpp"

namespace clampbeam {

/// w(a) = A1, w(b) = B1, w'(a) = A2, w'(b) = B2.
struct BoundaryData {
  double a = 0.0;
  double b = 1.0;
  double A1 = 0.0;
  double B1 = 0.0;
  double A2 = 0.0;
  double B2 = 0.0;

  /// Throws ConfigError unless a < b and all values are finite.
  void validate() const;
};

struct RawProblem {
  BoundaryData boundary;
  /// F in the slots (x, u, y, v, z) = (t, w, w', w'', w''').
  expr::Expression rhs;
  /// Exact w as an expression in x (read as t), if known.
  std::optional<expr::Expression> exact;
};

/// Hermite cubic matching the four boundary values. Stored in the rescaled
/// coordinate s = (t - a)/(b - a), which is exactly the canonical x.
class CubicInterpolant {
 public:
  CubicInterpolant(double a, double b, std::array<double, 4> scaled_coefficients);

  /// P(t) and its t-derivatives, order 0..3.
  double operator()(double t) const { return derivative(t, 0); }
  double derivative(double t, int order) const;

  /// Q(s) = P(a + (b-a)s) and its s-derivatives, order 0..3.
  double scaled(double s, int order = 0) const;
  const std::array<double, 4>& scaled_coefficients() const { return d_; }

  /// Monomial coefficients c0..c3 of P(t) = c0 + c1 t + c2 t^2 + c3 t^3.
  std::array<double, 4> coefficients() const;

  /// Q^{(order)} as an expression in the canonical variable x.
  expr::Expression scaled_expression(int order) const;

  bool is_zero() const;

 private:
  double a_;
  double length_;
  std::array<double, 4> d_;
};

CubicInterpolant hermite_cubic(const BoundaryData& data);

/// Homogeneous clamped problem u'''' = f(x, u, u', u'', u''') on [0,1]
/// together with the transformation that produced it.
class CanonicalProblem {
 public:
  CanonicalProblem(RawProblem raw, CubicInterpolant cubic, expr::Expression rhs);

  const expr::Expression& rhs() const { return rhs_; }
  double operator()(double x, double u, double y, double v, double z) const {
    return rhs_.eval({x, u, y, v, z});
  }

  const RawProblem& raw() const { return raw_; }
  const CubicInterpolant& cubic() const { return cubic_; }
  double length() const { return raw_.boundary.b - raw_.boundary.a; }
  /// (b - a)^4
  double scale() const;
  /// t = a + (b - a) x
  double physical(double x) const { return raw_.boundary.a + length() * x; }

  /// Canonical exact solution u(x_i) = w(t_i) - P(t_i), if the raw problem has one.
  std::optional<GridFunction> exact_on(const Grid& grid) const;

 private:
  RawProblem raw_;
  CubicInterpolant cubic_;
  expr::Expression rhs_;
};

/// f(x,u,y,v,z) = (b-a)^4 F(t, u + Q, (y + Q')/(b-a), (v + Q'')/(b-a)^2, (z + Q''')/(b-a)^3)
/// with t = a + (b-a)x and Q(x) = P(t).
CanonicalProblem canonicalize(const RawProblem& raw);

/// w(t_i) = u(x_i) + P(t_i). Node i of the result sits at t_i = a + (b-a) x_i.
GridFunction recover_solution(const GridFunction& u, const CanonicalProblem& problem);

/// Recovers the k-th t-derivative of w from the k-th x-derivative of u.
GridFunction recover_derivative(const GridFunction& du, int order, const CanonicalProblem& problem);

// ------------------------------------------------------------ problem files

/// Parsed problem file: the raw problem plus optional analysis inputs.
struct ProblemFile {
  RawProblem problem;
  std::optional<double> M;
  std::array<std::optional<double>, 4> K;
};

/// Line-oriented `key = value` text with `#` comments. Keys: a, b, A1, B1,
/// A2, B2, f (required), exact, M, K1..K4. Throws ConfigError.
ProblemFile parse_problem_file(std::string_view text);
ProblemFile load_problem_file(const std::filesystem::path& path);

/// Inverse of parse_problem_file.
std::string format_problem_file(const ProblemFile& file);

}  // namespace clampbeam
