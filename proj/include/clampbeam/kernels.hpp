#pragma once

// Green kernels of the clamped biharmonic operator and of the Dirichlet
// Laplacian on [0,1], plus the weight functions that turn u'(0), u'(1)
// into integrals of the nonlinear term.

#include <cmath>
#include <numbers>

namespace clampbeam::kernels {

/// sup_x of the kernel L1 norms over t. The values are closed forms.
struct KernelBounds {
  static constexpr double bound_G0 = 1.0 / 384.0;
  static constexpr double bound_G0x = 1.0 / (72.0 * std::numbers::sqrt3);
  static constexpr double bound_G = 1.0 / 8.0;
  /// Published shared bound for the integrals of h0 and h1.
  static constexpr double bound_H = 21.0 / 500.0;
  /// Exact value of both integrals; bound_H is a loose upper estimate of it.
  static constexpr double integral_H = 1.0 / 24.0;
};

/// Clamped-beam Green function: u(x) = int G0(x,t) phi(t) dt solves
/// u'''' = phi with u = u' = 0 at both ends.
double g0(double x, double t);

/// Partial derivative of g0 with respect to x.
double g0_dx(double x, double t);

/// Green function of -u'' = phi with u(0) = u(1) = 0.
double g(double x, double t);

double h0(double t);
double h1(double t);

}  // namespace clampbeam::kernels
