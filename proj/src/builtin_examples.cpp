#include "clampbeam/builtin_examples.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"

namespace clampbeam {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

ProblemFile make_file(BoundaryData bc, std::string_view rhs, std::optional<std::string_view> exact,
                      std::optional<double> M, std::array<std::optional<double>, 4> K) {
  ProblemFile file;
  file.problem.boundary = bc;
  file.problem.rhs = expr::parse(rhs);
  if (exact) file.problem.exact = expr::parse(*exact);
  file.M = M;
  file.K = K;
  return file;
}

std::array<BuiltinExample, 6> build() {
  const BoundaryData clamped{};
  const BoundaryData left_raised{0.0, 1.0, 1.0, 0.0, 0.0, 0.0};

  return {{
      {1, "Example 1: known polynomial solution",
       "u'''' = 12 + u u'''/2 - u' u''/4 + u'/4", "u(0) = u(1) = u'(0) = u'(1) = 0",
       make_file(clamped, "12 + u*z/2 - y*v/4 + y/4", "x^4/2 - x^3 + x^2/2", 36.0,
                 {18.0, 37.0 / 4.0, 1.0 / (8.0 * kSqrt3), 3.0 / 64.0}),
       25, true, "exact solution u = x^4/2 - x^3 + x^2/2"},
      {2, "Example 2: unknown solution", "u'''' = x + x^2 + u^2 u'' + u' sin(u''')",
       "u(0) = u(1) = u'(0) = u'(1) = 0",
       make_file(clamped, "x + x^2 + u^2*v + y*sin(z)", std::nullopt, 5.0,
                 {25.0 / 192.0, 1.0, 25.0 / 147456.0, 5.0 / (72.0 * kSqrt3)}),
       23, true, ""},
      {3, "Example 3: nonhomogeneous data", "w'''' = w^2 sin(w) + sin(x)",
       "w(0) = 1, w(1) = w'(0) = w'(1) = 0",
       make_file(left_raised, "u^2*sin(u) + sin(x)", std::nullopt, 6.0, {12545.0 / 4096.0, 0.0, 0.0, 0.0}),
       23, true, "P(x) = 2x^3 - 3x^2 + 1; unique solution in |w| <= 1.015625"},
      {4, "Example 4: nonhomogeneous data", "w'''' = w sin(w) + exp(-x^2)",
       "w(0) = 1, w(1) = w'(0) = w'(1) = 0",
       make_file(left_raised, "u*sin(u) + exp(-x^2)", std::nullopt, 6.0, {129.0 / 64.0, 0.0, 0.0, 0.0}),
       24, true, "P(x) = 2x^3 - 3x^2 + 1; unique solution in |w| <= 1.015625"},
      {5, "Example 5: general interval, existence only", "w'''' = w^(1/2) sin(exp(w)) + exp(-t^2)",
       "w(a) = A1, w(b) = B1, w'(a) = A2, w'(b) = B2 (default a=0, b=1, A1=1, others 0)",
       make_file(left_raised, "u^(1/2)*sin(exp(u)) + exp(-x^2)", std::nullopt, 6.0, {}),
       std::nullopt, false,
       "sup|f| <= (b-a)^4 (sqrt(M/384 + max|P|) + exp(-min(a^2,b^2))) gives a solution for some M; "
       "the square root is not Lipschitz where w = 0, so uniqueness is not claimed. "
       "Boundary data are a default choice and can be overridden."},
      {6, "Example 6: quintic nonlinearity", "w'''' = w^5",
       "w(0) = 0, w(1) = 1.87, w'(0) = 0, w'(1) = 5.61",
       make_file({0.0, 1.0, 0.0, 1.87, 0.0, 5.61}, "u^5", std::nullopt, 100.0, {103.0, 0.0, 0.0, 0.0}),
       23, true,
       "P(x) = 1.87x^3. Existence theorems based on the box |w_i| <= 2k_i need "
       "k0/(Q C) >= 1 with Q = 32 k0^5 and C = 1/384, but 384 k0/(32 k0^5) = 12/k0^4 < 1 "
       "for every k0 >= 1.87, so they do not apply; the contraction argument with "
       "M = 100, K1 = 103 does."},
  }};
}

}  // namespace

std::span<const BuiltinExample> builtin_examples() {
  static const std::array<BuiltinExample, 6> examples = build();
  return examples;
}

const BuiltinExample& builtin_example(int id) {
  const auto all = builtin_examples();
  if (id < 1 || id > static_cast<int>(all.size())) {
    throw ConfigError(fmt::format("unknown example id {} (expected 1..{})", id, all.size()));
  }
  return all[static_cast<std::size_t>(id - 1)];
}

}  // namespace clampbeam
