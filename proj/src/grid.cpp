#include "clampbeam/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"

namespace clampbeam {

Grid::Grid(int n) : n_(n), h_(1.0 / n) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError(fmt::format("grid needs an even number of intervals >= 8, got {}", n));
  }
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.node_count(), 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw ConfigError(fmt::format("grid function has {} values for {} nodes", values_.size(),
                                  grid_.node_count()));
  }
}

GridFunction GridFunction::sample(Grid grid, const std::function<double(double)>& f) {
  GridFunction out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  assert(grid_ == other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  assert(grid_ == other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction hadamard(const GridFunction& a, const GridFunction& b) {
  assert(a.grid() == b.grid());
  GridFunction out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

namespace numerics {

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double simpson(const GridFunction& f) {
  const int n = f.grid().intervals();
  assert(n % 2 == 0);
  const auto& y = f.values();
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n; i += 2) odd += y[i];
  for (int i = 2; i < n; i += 2) even += y[i];
  return f.grid().step() / 3.0 * (y[0] + 4.0 * odd + 2.0 * even + y[n]);
}

GridFunction diff5(const GridFunction& f) {
  const std::size_t n = static_cast<std::size_t>(f.grid().intervals());
  const double scale = 1.0 / (12.0 * f.grid().step());
  GridFunction d(f.grid());
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * scale;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * scale;
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * scale;
  }
  d[n - 1] = (-f[n - 4] + 6.0 * f[n - 3] - 18.0 * f[n - 2] + 10.0 * f[n - 1] + 3.0 * f[n]) * scale;
  d[n] = (3.0 * f[n - 4] - 16.0 * f[n - 3] + 36.0 * f[n - 2] - 48.0 * f[n - 1] + 25.0 * f[n]) *
         scale;
  return d;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t m = diag.size();
  assert(lower.size() == m && upper.size() == m && rhs.size() == m && m > 0);
  std::vector<double> c(m);
  std::vector<double> d(m);
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < m; ++i) {
    const double denom = diag[i] - lower[i] * c[i - 1];
    c[i] = upper[i] / denom;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
  }
  std::vector<double> x(m);
  x[m - 1] = d[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

GridFunction solve_second_order_bvp(const GridFunction& rhs, double left, double right) {
  const std::size_t n = static_cast<std::size_t>(rhs.grid().intervals());
  const double h2 = rhs.grid().step() * rhs.grid().step();
  const std::size_t m = n - 1;

  std::vector<double> lower(m, 1.0);
  std::vector<double> diag(m, -2.0);
  std::vector<double> upper(m, 1.0);
  std::vector<double> b(m);
  for (std::size_t i = 1; i < n; ++i) {
    const double second_diff = rhs[i - 1] - 2.0 * rhs[i] + rhs[i + 1];
    b[i - 1] = h2 * (rhs[i] + second_diff / 12.0);
  }
  b[0] -= left;
  b[m - 1] -= right;

  const std::vector<double> interior = solve_tridiagonal(lower, diag, upper, b);
  GridFunction u(rhs.grid());
  u[0] = left;
  u[n] = right;
  for (std::size_t i = 0; i < m; ++i) u[i + 1] = interior[i];
  return u;
}

}  // namespace numerics
}  // namespace clampbeam
