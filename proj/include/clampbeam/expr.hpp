#pragma once

// A small expression language for right-hand sides f(x, u, y, v, z), where
// (y, v, z) stand for (u', u'', u''').
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | constant | variable | name '(' expr ')' | '(' expr ')'
//
// Constants: pi, e. Variables: x, u, y, v, z. Functions: sin cos tan asin
// atan sinh cosh exp log sqrt abs. "-2^2" is -4. There is no implicit
// multiplication.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clampbeam::expr {

enum class Var : std::size_t { x = 0, u = 1, y = 2, v = 3, z = 4 };
inline constexpr std::size_t kVarCount = 5;

/// Values of (x, u, y, v, z), indexed by Var.
using Env = std::array<double, kVarCount>;

std::string_view var_name(Var var);
std::optional<Var> var_from_name(std::string_view name);

enum class Func { sin, cos, tan, asin, atan, sinh, cosh, exp, log, sqrt, abs };

std::string_view func_name(Func f);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { lexical, syntax, unknown_identifier };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  /// 0-based byte offset into the source.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

struct Node;

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  Expression();  // the literal 0
  explicit Expression(std::shared_ptr<const Node> root);

  /// Throws EvalError (with the failing sub-expression) on domain errors,
  /// division by zero or a non-finite result.
  double eval(const Env& env) const;

  bool depends_on(Var var) const;
  /// True if the tree is a single numeric literal.
  bool is_constant() const;
  std::optional<double> constant_value() const;

  /// Text that parses back to an equivalent tree.
  std::string to_string() const;

  const Node& root() const { return *root_; }
  const std::shared_ptr<const Node>& root_ptr() const { return root_; }

 private:
  std::shared_ptr<const Node> root_;
};

Expression parse(std::string_view source);

Expression number(double value);
Expression variable(Var var);
Expression call(Func f, const Expression& arg);
Expression pow(const Expression& base, const Expression& exponent);

// Builders fold numeric constants and the identities 0+a, a*1, a*0, a^1, a^0.
Expression operator-(const Expression& a);
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);

/// Symbolic partial derivative. Powers with a variable exponent are
/// differentiated through a^b = exp(b log a) and are only valid for a > 0.
Expression differentiate(const Expression& e, Var var);

/// Simultaneous substitution: every variable with an engaged replacement is
/// replaced by it.
using Substitution = std::array<std::optional<Expression>, kVarCount>;
Expression substitute(const Expression& e, const Substitution& replacements);

struct Node {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double value = 0.0;
  Var var = Var::x;
  Func func = Func::sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

}  // namespace clampbeam::expr
