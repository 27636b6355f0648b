#include "clampbeam/kernels.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"

namespace clampbeam::kernels {
namespace {

constexpr double kClampSlack = 1e-12;

double unit_arg(double s, const char* name) {
  if (!(s >= -kClampSlack && s <= 1.0 + kClampSlack)) {
    throw DomainError(fmt::format("kernel argument {}={} outside [0,1]", name, s));
  }
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace

double g0(double x, double t) {
  x = unit_arg(x, "x");
  t = unit_arg(t, "t");
  if (t <= x) {
    return t * t * (x - 1.0) * (x - 1.0) * (3.0 * x - 2.0 * t * x - t) / 6.0;
  }
  return x * x * (t - 1.0) * (t - 1.0) * (3.0 * t - 2.0 * t * x - x) / 6.0;
}

double g0_dx(double x, double t) {
  x = unit_arg(x, "x");
  t = unit_arg(t, "t");
  if (t <= x) {
    return t * t * (1.0 - x) * (2.0 * t * x - 3.0 * x + 1.0) / 2.0;
  }
  return (t - 1.0) * (t - 1.0) * x * (2.0 * t - 2.0 * t * x - x) / 2.0;
}

double g(double x, double t) {
  x = unit_arg(x, "x");
  t = unit_arg(t, "t");
  return t <= x ? t * (1.0 - x) : x * (1.0 - t);
}

double h0(double t) {
  t = unit_arg(t, "t");
  return t * t * t / 6.0 - t * t / 2.0 + t / 3.0;
}

double h1(double t) {
  t = unit_arg(t, "t");
  return -t * t * t / 6.0 + t / 6.0;
}

}  // namespace clampbeam::kernels
