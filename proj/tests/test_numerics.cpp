#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clampbeam/errors.hpp"
#include "clampbeam/grid.hpp"
#include "clampbeam/kernels.hpp"
#include "oracles.hpp"

using namespace clampbeam;
using namespace clampbeam::numerics;
using std::numbers::pi;

namespace {

double max_error(const GridFunction& f, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - exact(f.grid().node(i))));
  return e;
}

}  // namespace

TEST(Grid, Invariants) {
  EXPECT_THROW(Grid(7), ConfigError);
  EXPECT_THROW(Grid(6), ConfigError);
  EXPECT_THROW(Grid(0), ConfigError);
  const Grid grid(1000);
  EXPECT_EQ(grid.node(0), 0.0);
  EXPECT_EQ(grid.node(1000), 1.0);
  for (std::size_t i = 1; i <= 1000; ++i) EXPECT_LT(grid.node(i - 1), grid.node(i));
  EXPECT_THROW(GridFunction(grid, std::vector<double>(10)), ConfigError);
}

TEST(SupNorm, Basics) {
  const Grid grid(8);
  EXPECT_EQ(sup_norm(GridFunction(grid)), 0.0);
  GridFunction f(grid);
  f[0] = -3;
  f[1] = 1;
  f[2] = 2;
  EXPECT_EQ(sup_norm(f), 3.0);
  const auto u = GridFunction::sample(Grid(100), oracle::example1_exact);
  EXPECT_NEAR(sup_norm(u), 1.0 / 32.0, 1e-17);
}

TEST(Simpson, ExactnessAndAccuracy) {
  EXPECT_NEAR(simpson(GridFunction::sample(Grid(8), [](double) { return 1.0; })), 1.0, 1e-15);
  EXPECT_NEAR(simpson(GridFunction::sample(Grid(8), [](double x) { return x * x * x; })), 0.25, 1e-15);
  EXPECT_NEAR(simpson(GridFunction::sample(Grid(100), kernels::h0)), 1.0 / 24.0, 1e-10);
  // O(h^4): halving h divides the error of exp by about 16
  const double e1 = std::abs(simpson(GridFunction::sample(Grid(16), [](double x) { return std::exp(x); })) -
                             (std::exp(1.0) - 1.0));
  const double e2 = std::abs(simpson(GridFunction::sample(Grid(32), [](double x) { return std::exp(x); })) -
                             (std::exp(1.0) - 1.0));
  EXPECT_NEAR(e1 / e2, 16.0, 0.5);
}

TEST(Simpson, Linearity) {
  const Grid grid(64);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = oracle::uniform(-5, 5);
    const double b = oracle::uniform(-5, 5);
    GridFunction f(grid);
    GridFunction g(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = oracle::uniform(-1, 1);
      g[i] = oracle::uniform(-1, 1);
    }
    EXPECT_NEAR(simpson(a * f + b * g), a * simpson(f) + b * simpson(g), 1e-13);
  }
}

TEST(Diff5, ExactOnQuartics) {
  for (int n : {8, 20, 100}) {
    const Grid grid(n);
    const auto d = diff5(GridFunction::sample(grid, [](double x) { return x * x * x * x; }));
    EXPECT_LE(max_error(d, [](double x) { return 4 * x * x * x; }), 1e-12) << "n=" << n;
  }
  const auto c = diff5(GridFunction::sample(Grid(10), [](double) { return 7.5; }));
  EXPECT_LE(sup_norm(c), 1e-12);
}

TEST(Diff5, PolynomialsUpToDegreeFour) {
  const Grid grid(100);
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, 5> c{};
    for (double& ci : c) ci = oracle::uniform(-2, 2);
    const auto p = [&c](double x) { return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4]))); };
    const auto dp = [&c](double x) { return c[1] + x * (2 * c[2] + x * (3 * c[3] + x * 4 * c[4])); };
    EXPECT_LE(max_error(diff5(GridFunction::sample(grid, p)), dp), 1e-11);
  }
}

TEST(Diff5, FourthOrderConvergence) {
  const auto f = [](double x) { return std::sin(2 * pi * x); };
  const auto df = [](double x) { return 2 * pi * std::cos(2 * pi * x); };
  const double e1 = max_error(diff5(GridFunction::sample(Grid(40), f)), df);
  const double e2 = max_error(diff5(GridFunction::sample(Grid(80), f)), df);
  EXPECT_GE(e1 / e2, 12.0);
  EXPECT_LE(e1 / e2, 20.0);
}

TEST(SecondOrderBvp, PolynomialData) {
  const Grid grid(50);
  const auto u = solve_second_order_bvp(GridFunction::sample(grid, [](double) { return 2.0; }), 0.0, 0.0);
  EXPECT_LE(max_error(u, [](double x) { return x * x - x; }), 1e-14);
  EXPECT_EQ(u[0], 0.0);
  EXPECT_EQ(u[50], 0.0);

  const auto affine = solve_second_order_bvp(GridFunction(grid), 3.0, 7.0);
  EXPECT_LE(max_error(affine, [](double x) { return 3 + 4 * x; }), 1e-13);
  EXPECT_EQ(affine[0], 3.0);
  EXPECT_EQ(affine[50], 7.0);
}

TEST(SecondOrderBvp, FourthOrderConvergence) {
  const auto g = [](double x) { return -pi * pi * std::sin(pi * x); };
  const auto exact = [](double x) { return std::sin(pi * x); };
  const double e1 = max_error(solve_second_order_bvp(GridFunction::sample(Grid(20), g), 0, 0), exact);
  const double e2 = max_error(solve_second_order_bvp(GridFunction::sample(Grid(40), g), 0, 0), exact);
  EXPECT_GE(e1 / e2, 12.0);
  EXPECT_LE(e1 / e2, 20.0);
}

TEST(SecondOrderBvp, ChainedSolveReproducesClampedBiharmonic) {
  // u = x^2 (1-x)^2 has u'''' = 24, u''(0) = u''(1) = 2
  const Grid grid(100);
  const auto v = solve_second_order_bvp(GridFunction::sample(grid, [](double) { return 24.0; }), 2.0, 2.0);
  const auto u = solve_second_order_bvp(v, 0.0, 0.0);
  EXPECT_LE(max_error(u, [](double x) { return x * x * (1 - x) * (1 - x); }), 1e-12);
}

TEST(SecondOrderBvp, DiscreteMaximumPrinciple) {
  const Grid grid(40);
  for (int trial = 0; trial < 20; ++trial) {
    GridFunction g(grid);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = oracle::uniform(-1.0, 0.0);
    const auto u = solve_second_order_bvp(g, 0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_GE(u[i], 0.0);
  }
}

TEST(Tridiagonal, MatchesDenseSolution) {
  // diagonally dominant 4x4 system with known solution
  const std::vector<double> lower = {0, 1, 2, 1};
  const std::vector<double> diag = {5, 6, 7, 5};
  const std::vector<double> upper = {1, 2, 1, 0};
  const std::vector<double> x = {1, -2, 3, 0.5};
  std::vector<double> rhs(4);
  for (std::size_t i = 0; i < 4; ++i) {
    rhs[i] = diag[i] * x[i] + (i > 0 ? lower[i] * x[i - 1] : 0) + (i < 3 ? upper[i] * x[i + 1] : 0);
  }
  const auto sol = solve_tridiagonal(lower, diag, upper, rhs);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(sol[i], x[i], 1e-14);
}
