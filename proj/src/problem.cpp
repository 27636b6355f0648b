#include "clampbeam/problem.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"

namespace clampbeam {

using expr::Expression;
using expr::Var;

void BoundaryData::validate() const {
  for (double value : {a, b, A1, B1, A2, B2}) {
    if (!std::isfinite(value)) throw ConfigError("boundary data must be finite");
  }
  if (!(a < b)) throw ConfigError(fmt::format("interval needs a < b, got a={} b={}", a, b));
}

// ----------------------------------------------------------- cubic

CubicInterpolant::CubicInterpolant(double a, double b, std::array<double, 4> scaled_coefficients)
    : a_(a), length_(b - a), d_(scaled_coefficients) {}

double CubicInterpolant::scaled(double s, int order) const {
  switch (order) {
    case 0:
      return d_[0] + s * (d_[1] + s * (d_[2] + s * d_[3]));
    case 1:
      return d_[1] + s * (2.0 * d_[2] + s * 3.0 * d_[3]);
    case 2:
      return 2.0 * d_[2] + 6.0 * d_[3] * s;
    case 3:
      return 6.0 * d_[3];
    default:
      return 0.0;
  }
}

double CubicInterpolant::derivative(double t, int order) const {
  const double s = (t - a_) / length_;
  return scaled(s, order) / std::pow(length_, order);
}

std::array<double, 4> CubicInterpolant::coefficients() const {
  // P(t) = sum_k d_k ((t - a)/L)^k, expanded binomially.
  std::array<double, 4> c{};
  const double r = 1.0 / length_;
  const double m = -a_ / length_;  // s = r t + m
  constexpr int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j <= k; ++j) {
      c[j] += d_[k] * binom[k][j] * std::pow(r, j) * std::pow(m, k - j);
    }
  }
  return c;
}

Expression CubicInterpolant::scaled_expression(int order) const {
  const Expression x = expr::variable(Var::x);
  std::array<double, 4> coeff{};
  // coefficients of Q^{(order)} in powers of x
  for (int k = order; k < 4; ++k) {
    double factor = 1.0;
    for (int j = 0; j < order; ++j) factor *= k - j;
    coeff[k - order] = factor * d_[k];
  }
  Expression out = expr::number(coeff[0]);
  for (int k = 1; k < 4; ++k) {
    if (coeff[k] == 0.0) continue;
    out = out + expr::number(coeff[k]) * expr::pow(x, expr::number(k));
  }
  return out;
}

bool CubicInterpolant::is_zero() const {
  return d_[0] == 0.0 && d_[1] == 0.0 && d_[2] == 0.0 && d_[3] == 0.0;
}

CubicInterpolant hermite_cubic(const BoundaryData& data) {
  data.validate();
  const double len = data.b - data.a;
  // Hermite basis in s: h00 = 1 - 3s^2 + 2s^3, h01 = 3s^2 - 2s^3,
  // h10 = s - 2s^2 + s^3, h11 = -s^2 + s^3; slopes scale by len.
  const double m0 = len * data.A2;
  const double m1 = len * data.B2;
  return CubicInterpolant(data.a, data.b,
                          {data.A1, m0, -3.0 * data.A1 + 3.0 * data.B1 - 2.0 * m0 - m1,
                           2.0 * data.A1 - 2.0 * data.B1 + m0 + m1});
}

// ------------------------------------------------------- canonical form

CanonicalProblem::CanonicalProblem(RawProblem raw, CubicInterpolant cubic, Expression rhs)
    : raw_(std::move(raw)), cubic_(cubic), rhs_(std::move(rhs)) {}

double CanonicalProblem::scale() const { return std::pow(length(), 4); }

std::optional<GridFunction> CanonicalProblem::exact_on(const Grid& grid) const {
  if (!raw_.exact) return std::nullopt;
  GridFunction u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = grid.node(i);
    u[i] = raw_.exact->eval({physical(x), 0.0, 0.0, 0.0, 0.0}) - cubic_.scaled(x);
  }
  return u;
}

CanonicalProblem canonicalize(const RawProblem& raw) {
  raw.boundary.validate();
  const CubicInterpolant cubic = hermite_cubic(raw.boundary);
  const double a = raw.boundary.a;
  const double len = raw.boundary.b - a;

  const Expression x = expr::variable(Var::x);
  expr::Substitution subst;
  subst[static_cast<std::size_t>(Var::x)] = expr::number(a) + expr::number(len) * x;
  const std::array<Var, 4> slots = {Var::u, Var::y, Var::v, Var::z};
  for (int k = 0; k < 4; ++k) {
    const Var var = slots[static_cast<std::size_t>(k)];
    Expression arg = expr::variable(var) + cubic.scaled_expression(k);
    if (k > 0) arg = arg / expr::number(std::pow(len, k));
    subst[static_cast<std::size_t>(var)] = arg;
  }
  Expression rhs = expr::number(std::pow(len, 4)) * expr::substitute(raw.rhs, subst);
  return CanonicalProblem(raw, cubic, std::move(rhs));
}

GridFunction recover_solution(const GridFunction& u, const CanonicalProblem& problem) {
  return recover_derivative(u, 0, problem);
}

GridFunction recover_derivative(const GridFunction& du, int order, const CanonicalProblem& problem) {
  const double factor = std::pow(problem.length(), order);
  GridFunction w(du.grid());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (du[i] + problem.cubic().scaled(du.grid().node(i), order)) / factor;
  }
  return w;
}

// --------------------------------------------------------- problem files

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view value, int line) {
  try {
    const Expression e = expr::parse(value);
    if (const auto c = e.constant_value()) return *c;
  } catch (const expr::ParseError& err) {
    throw ConfigError(fmt::format("line {}: key '{}': {}", line, key, err.what()));
  }
  throw ConfigError(fmt::format("line {}: key '{}' needs a numeric value, got '{}'", line, key, value));
}

}  // namespace

ProblemFile parse_problem_file(std::string_view text) {
  ProblemFile out;
  std::map<std::string, int, std::less<>> seen;
  bool have_f = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(fmt::format("line {}: key '{}' has no value", line_no, key));
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw ConfigError(
          fmt::format("line {}: duplicate key '{}' (first set on line {})", line_no, key, it->second));
    }

    auto& bc = out.problem.boundary;
    if (key == "a") {
      bc.a = parse_real(key, value, line_no);
    } else if (key == "b") {
      bc.b = parse_real(key, value, line_no);
    } else if (key == "A1") {
      bc.A1 = parse_real(key, value, line_no);
    } else if (key == "B1") {
      bc.B1 = parse_real(key, value, line_no);
    } else if (key == "A2") {
      bc.A2 = parse_real(key, value, line_no);
    } else if (key == "B2") {
      bc.B2 = parse_real(key, value, line_no);
    } else if (key == "f" || key == "exact") {
      Expression e;
      try {
        e = expr::parse(value);
      } catch (const expr::ParseError& err) {
        throw ConfigError(fmt::format("line {}: key '{}': {}", line_no, key, err.what()));
      }
      if (key == "f") {
        out.problem.rhs = e;
        have_f = true;
      } else {
        for (Var var : {Var::u, Var::y, Var::v, Var::z}) {
          if (e.depends_on(var)) {
            throw ConfigError(fmt::format("line {}: 'exact' may only depend on x", line_no));
          }
        }
        out.problem.exact = e;
      }
    } else if (key == "M") {
      const double m = parse_real(key, value, line_no);
      if (!(m > 0.0)) throw ConfigError(fmt::format("line {}: M must be positive", line_no));
      out.M = m;
    } else if (key.size() == 2 && key[0] == 'K' && key[1] >= '1' && key[1] <= '4') {
      const double k = parse_real(key, value, line_no);
      if (!(k >= 0.0)) throw ConfigError(fmt::format("line {}: {} must be nonnegative", line_no, key));
      out.K[static_cast<std::size_t>(key[1] - '1')] = k;
    } else {
      throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key));
    }
  }
  if (!have_f) throw ConfigError("problem file has no right-hand side 'f'");
  out.problem.boundary.validate();
  return out;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read problem file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str());
}

std::string format_problem_file(const ProblemFile& file) {
  const auto& p = file.problem;
  const auto& bc = p.boundary;
  std::string out;
  out += fmt::format("a = {}\nb = {}\n", bc.a, bc.b);
  out += fmt::format("A1 = {}\nB1 = {}\nA2 = {}\nB2 = {}\n", bc.A1, bc.B1, bc.A2, bc.B2);
  out += fmt::format("f = {}\n", p.rhs.to_string());
  if (p.exact) out += fmt::format("exact = {}\n", p.exact->to_string());
  if (file.M) out += fmt::format("M = {}\n", *file.M);
  for (std::size_t k = 0; k < 4; ++k) {
    if (file.K[k]) out += fmt::format("K{} = {}\n", k + 1, *file.K[k]);
  }
  return out;
}

}  // namespace clampbeam
