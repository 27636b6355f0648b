#pragma once

// Uniform grids on [0,1] and the fourth-order discrete toolbox used by the
// fixed-point iteration: five-point differentiation, the compact scheme for
// u'' = g, and composite Simpson quadrature.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace clampbeam {

class Grid {
 public:
  /// n intervals; n must be even and at least 8.
  explicit Grid(int n);

  int intervals() const { return n_; }
  std::size_t node_count() const { return static_cast<std::size_t>(n_) + 1; }
  double step() const { return h_; }
  /// x_i = i/n; x_0 = 0 and x_n = 1 exactly.
  double node(std::size_t i) const { return static_cast<double>(i) / n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double h_;
};

/// Values sampled at the nodes of a Grid.
class GridFunction {
 public:
  explicit GridFunction(Grid grid);  // zero-initialized
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction sample(Grid grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);
/// Pointwise product.
GridFunction hadamard(const GridFunction& a, const GridFunction& b);

namespace numerics {

/// max_i |f(x_i)|
double sup_norm(const GridFunction& f);

/// Composite Simpson estimate of the integral over [0,1].
double simpson(const GridFunction& f);

/// Fourth-order first derivative at every node. Interior nodes use the
/// centered stencil; the two nodes nearest each end use one-sided stencils.
GridFunction diff5(const GridFunction& f);

/// Solves u'' = g on (0,1), u(0) = left, u(1) = right, with the compact
/// three-point scheme  (u_{i-1} - 2u_i + u_{i+1})/h^2 = g_i + (g_{i-1} - 2g_i + g_{i+1})/12.
GridFunction solve_second_order_bvp(const GridFunction& rhs, double left, double right);

/// Thomas elimination for a tridiagonal system without pivoting.
/// lower[0] and upper[m-1] are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace numerics
}  // namespace clampbeam
