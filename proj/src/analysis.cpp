#include "clampbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "clampbeam/kernels.hpp"

namespace clampbeam::analysis {

using expr::Env;
using expr::Var;

DomainBox::DomainBox(double M) : M_(M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError(fmt::format("M must be positive, got {}", M));
}

double DomainBox::u_bound() const { return M_ * kernels::KernelBounds::bound_G0; }
double DomainBox::y_bound() const { return M_ * kernels::KernelBounds::bound_G0x; }

std::array<double, 2> DomainBox::range(Var var) const {
  switch (var) {
    case Var::x:
      return {0.0, 1.0};
    case Var::u:
      return {-u_bound(), u_bound()};
    case Var::y:
      return {-y_bound(), y_bound()};
    case Var::v:
      return {-v_bound(), v_bound()};
    case Var::z:
      return {-z_bound(), z_bound()};
  }
  return {0.0, 0.0};
}

bool DomainBox::contains(const Env& p) const {
  for (std::size_t i = 0; i < expr::kVarCount; ++i) {
    const auto [lo, hi] = range(static_cast<Var>(i));
    if (p[i] < lo || p[i] > hi) return false;
  }
  return true;
}

double contraction_factor(const Lipschitz& K) {
  for (double k : K) {
    if (!(k >= 0.0)) throw DomainError(fmt::format("Lipschitz constant must be nonnegative, got {}", k));
  }
  return K[0] * kernels::KernelBounds::bound_G0 + K[1] * kernels::KernelBounds::bound_G0x + K[2] +
         K[3];
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::supplied:
      return "supplied";
    case Provenance::symbolic:
      return "estimated (symbolic partial on lattice)";
    case Provenance::finite_difference:
      return "estimated (finite differences on lattice)";
    case Provenance::lattice:
      return "estimated (lattice maximum)";
  }
  return "?";
}

UndefinedInDomain::UndefinedInDomain(const std::string& what, Env point)
    : EvalError(what), point_(point) {}

namespace {

using Sampler = std::function<double(const Env&)>;

std::string point_text(const Env& p) {
  return fmt::format("(x={}, u={}, y={}, v={}, z={})", p[0], p[1], p[2], p[3], p[4]);
}

double sample_abs(const Sampler& g, const Env& p, std::string_view label) {
  try {
    return std::abs(g(p));
  } catch (const EvalError& err) {
    throw UndefinedInDomain(fmt::format("{} undefined at {} in D_M: {}", label, point_text(p), err.what()),
                            p);
  }
}

struct Candidate {
  double value;
  Env point;
};

/// Maximum of |g| over the box: lattice scan, then compass search from the
/// best few lattice points.
double box_maximum(const Sampler& g, const DomainBox& box, const LatticeSpec& spec,
                   std::string_view label) {
  const int m = spec.points;
  std::array<std::array<double, 2>, expr::kVarCount> ranges{};
  for (std::size_t a = 0; a < expr::kVarCount; ++a) ranges[a] = box.range(static_cast<Var>(a));

  auto coord = [&](std::size_t axis, int i) {
    const auto [lo, hi] = ranges[axis];
    if (i == m - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / (m - 1);
  };

  constexpr std::size_t kKeep = 4;
  std::vector<Candidate> best;
  Env p{};
  std::array<int, expr::kVarCount> idx{};
  const long total = static_cast<long>(std::pow(m, expr::kVarCount));
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    for (std::size_t a = 0; a < expr::kVarCount; ++a) {
      idx[a] = static_cast<int>(rest % m);
      rest /= m;
      p[a] = coord(a, idx[a]);
    }
    const double value = sample_abs(g, p, label);
    if (best.size() < kKeep || value > best.back().value) {
      if (best.size() == kKeep) best.pop_back();
      best.push_back({value, p});
      std::sort(best.begin(), best.end(),
                [](const Candidate& l, const Candidate& r) { return l.value > r.value; });
    }
  }

  double result = best.front().value;
  if (!spec.refine) return result;

  for (const Candidate& start : best) {
    Env cur = start.point;
    double cur_value = start.value;
    std::array<double, expr::kVarCount> step{};
    std::array<double, expr::kVarCount> min_step{};
    for (std::size_t a = 0; a < expr::kVarCount; ++a) {
      const double width = ranges[a][1] - ranges[a][0];
      step[a] = width / (m - 1) / 2.0;
      min_step[a] = width * 1e-9;
    }
    for (int iter = 0; iter < 400; ++iter) {
      bool improved = false;
      for (std::size_t a = 0; a < expr::kVarCount; ++a) {
        for (double dir : {1.0, -1.0}) {
          Env trial = cur;
          trial[a] = std::clamp(cur[a] + dir * step[a], ranges[a][0], ranges[a][1]);
          if (trial[a] == cur[a]) continue;
          const double value = sample_abs(g, trial, label);
          if (value > cur_value) {
            cur = trial;
            cur_value = value;
            improved = true;
          }
        }
      }
      if (!improved) {
        bool done = true;
        for (std::size_t a = 0; a < expr::kVarCount; ++a) {
          step[a] /= 2.0;
          if (step[a] > min_step[a]) done = false;
        }
        if (done) break;
      }
    }
    result = std::max(result, cur_value);
  }
  return result;
}

Sampler central_difference(const expr::Expression& f, Var var, const DomainBox& box) {
  const auto [lo, hi] = box.range(var);
  const double h = 1e-6 * (hi - lo);
  const auto axis = static_cast<std::size_t>(var);
  return [f, h, axis](const Env& p) {
    Env plus = p;
    Env minus = p;
    plus[axis] += h;
    minus[axis] -= h;
    return (f.eval(plus) - f.eval(minus)) / (2.0 * h);
  };
}

}  // namespace

ConditionReport check_conditions(const expr::Expression& f, double M, const CheckOptions& options) {
  const DomainBox box(M);
  if (options.lattice.points < 5) {
    throw ConfigError(fmt::format("lattice needs at least 5 points per axis, got {}", options.lattice.points));
  }

  ConditionReport report;
  report.M = M;

  const Sampler eval_f = [&f](const Env& p) { return f.eval(p); };
  if (options.sup_f) {
    report.sup_f = *options.sup_f;
    report.sup_f_provenance = Provenance::supplied;
  } else {
    report.sup_f = box_maximum(eval_f, box, options.lattice, "f");
    report.sup_f_provenance = Provenance::lattice;
  }

  constexpr std::array<Var, 4> slots = {Var::u, Var::y, Var::v, Var::z};
  for (std::size_t k = 0; k < 4; ++k) {
    if (options.K[k]) {
      report.K[k] = *options.K[k];
      report.K_provenance[k] = Provenance::supplied;
      continue;
    }
    const Var var = slots[k];
    const std::string label = fmt::format("df/d{}", expr::var_name(var));
    if (!f.depends_on(var)) {
      report.K[k] = 0.0;
      report.K_provenance[k] = Provenance::symbolic;
      continue;
    }
    const expr::Expression partial = expr::differentiate(f, var);
    try {
      report.K[k] = box_maximum([&partial](const Env& p) { return partial.eval(p); }, box,
                                options.lattice, label);
      report.K_provenance[k] = Provenance::symbolic;
    } catch (const UndefinedInDomain&) {
      // The symbolic partial can fail where f is still defined (e.g. a kink
      // of abs); difference quotients of f take over.
      report.K[k] = box_maximum(central_difference(f, var, box), box, options.lattice, label);
      report.K_provenance[k] = Provenance::finite_difference;
    }
  }

  report.q = contraction_factor(report.K);
  report.lemma1_ok = report.sup_f <= M / 2.0;
  report.theorem1_ok = report.lemma1_ok && report.q < 0.5;
  return report;
}

double AprioriBound::u() const { return p * kernels::KernelBounds::bound_G0; }
double AprioriBound::y() const { return p * kernels::KernelBounds::bound_G0x; }

AprioriBound apriori_bound(double q, double first_step, int k) {
  if (!(q >= 0.0 && q < 0.5)) throw DomainError(fmt::format("a-priori bound needs 0 <= q < 1/2, got {}", q));
  if (!(first_step >= 0.0)) throw DomainError("first step must be nonnegative");
  if (k < 0) throw DomainError("iteration index must be nonnegative");
  return {std::pow(q + 0.5, k) / (0.5 - q) * first_step};
}

}  // namespace clampbeam::analysis
