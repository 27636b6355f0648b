#include "clampbeam/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "clampbeam/errors.hpp"

namespace clampbeam::expr {

using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

namespace {

constexpr std::array<std::string_view, kVarCount> kVarNames = {"x", "u", "y", "v", "z"};

struct FuncEntry {
  std::string_view name;
  Func func;
};
constexpr std::array<FuncEntry, 11> kFuncs = {{{"sin", Func::sin},
                                                {"cos", Func::cos},
                                                {"tan", Func::tan},
                                                {"asin", Func::asin},
                                                {"atan", Func::atan},
                                                {"sinh", Func::sinh},
                                                {"cosh", Func::cosh},
                                                {"exp", Func::exp},
                                                {"log", Func::log},
                                                {"sqrt", Func::sqrt},
                                                {"abs", Func::abs}}};

NodePtr make_number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return n;
}

NodePtr make_unary(Kind kind, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(Kind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_number(const NodePtr& n, double value) {
  return n->kind == Kind::number && n->value == value;
}

/// Exponent literal that is expanded to repeated multiplication.
std::optional<int> small_integer_exponent(const Node& exponent) {
  if (exponent.kind != Kind::number) return std::nullopt;
  const double e = exponent.value;
  if (e == std::trunc(e) && std::abs(e) <= 9.0) return static_cast<int>(e);
  return std::nullopt;
}

// ---------------------------------------------------------------- printing

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::sub:
      return 1;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::negate:
      return 3;
    case Kind::pow:
      return 4;
    case Kind::number:
      return n.value < 0.0 || std::signbit(n.value) ? 3 : 5;
    case Kind::variable:
    case Kind::call:
      return 5;
  }
  return 5;
}

void print(const Node& n, std::string& out);

void print_child(const Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::number:
      if (n.value == std::numbers::pi) {
        out += "pi";
      } else if (n.value == std::numbers::e) {
        out += "e";
      } else {
        out += fmt::format("{}", n.value);
      }
      return;
    case Kind::variable:
      out += var_name(n.var);
      return;
    case Kind::call:
      out += func_name(n.func);
      print_child(*n.lhs, true, out);
      return;
    case Kind::negate:
      out += '-';
      print_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case Kind::pow:
      print_child(*n.lhs, precedence(*n.lhs) <= 4, out);
      out += '^';
      print_child(*n.rhs, precedence(*n.rhs) < 4, out);
      return;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      const int p = precedence(n);
      print_child(*n.lhs, precedence(*n.lhs) < p, out);
      out += n.kind == Kind::add ? " + " : n.kind == Kind::sub ? " - " : n.kind == Kind::mul ? "*" : "/";
      print_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

// -------------------------------------------------------------- evaluation

[[noreturn]] void eval_fail(const Node& n, const std::string& what) {
  std::string text;
  print(n, text);
  throw EvalError(fmt::format("{} in '{}'", what, text));
}

double eval_node(const Node& n, const Env& env);

double eval_func(const Node& n, double a) {
  switch (n.func) {
    case Func::sin:
      return std::sin(a);
    case Func::cos:
      return std::cos(a);
    case Func::tan:
      return std::tan(a);
    case Func::asin:
      if (a < -1.0 || a > 1.0) eval_fail(n, fmt::format("asin argument {} outside [-1,1]", a));
      return std::asin(a);
    case Func::atan:
      return std::atan(a);
    case Func::sinh:
      return std::sinh(a);
    case Func::cosh:
      return std::cosh(a);
    case Func::exp:
      return std::exp(a);
    case Func::log:
      if (a <= 0.0) eval_fail(n, fmt::format("log of nonpositive argument {}", a));
      return std::log(a);
    case Func::sqrt:
      if (a < 0.0) eval_fail(n, fmt::format("sqrt of negative argument {}", a));
      return std::sqrt(a);
    case Func::abs:
      return std::abs(a);
  }
  return 0.0;
}

double eval_pow(const Node& n, const Env& env) {
  const double base = eval_node(*n.lhs, env);
  if (const auto k = small_integer_exponent(*n.rhs)) {
    double p = 1.0;
    for (int i = 0; i < std::abs(*k); ++i) p *= base;
    if (*k >= 0) return p;
    if (p == 0.0) eval_fail(n, "division by zero");
    return 1.0 / p;
  }
  const double exponent = eval_node(*n.rhs, env);
  if (base > 0.0) return std::exp(exponent * std::log(base));
  if (base == 0.0 && exponent > 0.0) return 0.0;
  eval_fail(n, fmt::format("power with base {} and exponent {}", base, exponent));
}

double eval_node(const Node& n, const Env& env) {
  double r = 0.0;
  switch (n.kind) {
    case Kind::number:
      return n.value;
    case Kind::variable:
      return env[static_cast<std::size_t>(n.var)];
    case Kind::negate:
      return -eval_node(*n.lhs, env);
    case Kind::add:
      r = eval_node(*n.lhs, env) + eval_node(*n.rhs, env);
      break;
    case Kind::sub:
      r = eval_node(*n.lhs, env) - eval_node(*n.rhs, env);
      break;
    case Kind::mul:
      r = eval_node(*n.lhs, env) * eval_node(*n.rhs, env);
      break;
    case Kind::div: {
      const double num = eval_node(*n.lhs, env);
      const double den = eval_node(*n.rhs, env);
      if (den == 0.0) eval_fail(n, "division by zero");
      r = num / den;
      break;
    }
    case Kind::pow:
      r = eval_pow(n, env);
      break;
    case Kind::call:
      r = eval_func(n, eval_node(*n.lhs, env));
      break;
  }
  if (!std::isfinite(r)) eval_fail(n, "non-finite result");
  return r;
}

bool node_depends_on(const Node& n, Var var) {
  switch (n.kind) {
    case Kind::number:
      return false;
    case Kind::variable:
      return n.var == var;
    default:
      return (n.lhs && node_depends_on(*n.lhs, var)) || (n.rhs && node_depends_on(*n.rhs, var));
  }
}

// ------------------------------------------------------------------ parser

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t pos;
  double value = 0.0;
  std::string_view text;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) {
    return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]));
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(i) || (c == '.' && digit(i + 1))) {
      while (digit(i)) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (digit(k)) {
          i = k;
          while (digit(i)) ++i;
        }
      }
      const std::string text(src.substr(start, i - start));
      out.push_back({Tok::number, start, std::strtod(text.c_str(), nullptr), src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::ident, start, 0.0, src.substr(start, i - start)});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default: {
        const auto byte = static_cast<unsigned char>(c);
        const std::string shown =
            std::isprint(byte) ? fmt::format("'{}'", c) : fmt::format("byte 0x{:02x}", byte);
        throw ParseError(ParseError::Kind::lexical, start,
                         fmt::format("unexpected character {} at position {}", shown, start + 1));
      }
    }
    out.push_back({kind, start, 0.0, src.substr(start, 1)});
    ++i;
  }
  out.push_back({Tok::end, src.size(), 0.0, {}});
  return out;
}

std::string_view describe(const Token& t) {
  return t.kind == Tok::end ? std::string_view("end of input") : t.text;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expression parse_all() {
    Expression e = parse_expr();
    if (peek().kind != Tok::end) {
      syntax_error("an operator or end of input");
    }
    return e;
  }

 private:
  static constexpr int kMaxDepth = 200;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void syntax_error(std::string_view expected) const {
    const Token& t = peek();
    throw ParseError(ParseError::Kind::syntax, t.pos,
                     fmt::format("expected {} at position {}, found '{}'", expected, t.pos + 1,
                                 describe(t)));
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        throw ParseError(ParseError::Kind::syntax, parser.peek().pos,
                         "expression nested too deeply");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  Expression parse_expr() {
    DepthGuard guard(*this);
    Expression lhs = parse_term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool add = next().kind == Tok::plus;
      Expression rhs = parse_term();
      lhs = add ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  Expression parse_term() {
    Expression lhs = parse_unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const bool mul = next().kind == Tok::star;
      Expression rhs = parse_unary();
      lhs = mul ? lhs * rhs : lhs / rhs;
    }
    return lhs;
  }

  Expression parse_unary() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::minus) {
      next();
      return -parse_unary();
    }
    if (peek().kind == Tok::plus) {
      next();
      return parse_unary();
    }
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    if (peek().kind == Tok::caret) {
      next();
      return pow(base, parse_unary());
    }
    return base;
  }

  Expression parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        next();
        return number(t.value);
      case Tok::lparen: {
        next();
        Expression inner = parse_expr();
        if (peek().kind != Tok::rparen) syntax_error("')'");
        next();
        return inner;
      }
      case Tok::ident:
        return parse_identifier();
      default:
        syntax_error("a number, identifier, '(' or unary operator");
    }
  }

  Expression parse_identifier() {
    const Token& t = next();
    for (const auto& entry : kFuncs) {
      if (entry.name == t.text) {
        if (peek().kind != Tok::lparen) syntax_error(fmt::format("'(' after '{}'", t.text));
        next();
        Expression arg = parse_expr();
        if (peek().kind != Tok::rparen) syntax_error("')'");
        next();
        return call(entry.func, arg);
      }
    }
    if (const auto var = var_from_name(t.text)) return variable(*var);
    if (t.text == "pi") return number(std::numbers::pi);
    if (t.text == "e") return number(std::numbers::e);
    throw ParseError(ParseError::Kind::unknown_identifier, t.pos,
                     fmt::format("unknown identifier '{}' at position {}", t.text, t.pos + 1));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

// ------------------------------------------------------------- public API

std::string_view var_name(Var var) { return kVarNames[static_cast<std::size_t>(var)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  return std::nullopt;
}

std::string_view func_name(Func f) {
  for (const auto& entry : kFuncs) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(message), kind_(kind), position_(position) {}

Expression::Expression() : root_(make_number(0.0)) {}
Expression::Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

double Expression::eval(const Env& env) const { return eval_node(*root_, env); }

bool Expression::depends_on(Var var) const { return node_depends_on(*root_, var); }

bool Expression::is_constant() const { return root_->kind == Kind::number; }

std::optional<double> Expression::constant_value() const {
  if (is_constant()) return root_->value;
  return std::nullopt;
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expression parse(std::string_view source) { return Parser(lex(source)).parse_all(); }

Expression number(double value) { return Expression(make_number(value)); }

Expression variable(Var var) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->var = var;
  return Expression(n);
}

Expression call(Func f, const Expression& arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->func = f;
  n->lhs = arg.root_ptr();
  if (arg.is_constant()) {
    try {
      return number(eval_node(*n, Env{}));
    } catch (const EvalError&) {
      // left unfolded; the error resurfaces at evaluation time
    }
  }
  return Expression(n);
}

namespace {

/// Folds a binary node whose operands are both literals, if the result is finite.
std::optional<Expression> fold(Kind kind, const NodePtr& a, const NodePtr& b) {
  if (a->kind != Kind::number || b->kind != Kind::number) return std::nullopt;
  const auto node = make_binary(kind, a, b);
  try {
    return number(eval_node(*node, Env{}));
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

}  // namespace

Expression pow(const Expression& base, const Expression& exponent) {
  const auto& a = base.root_ptr();
  const auto& b = exponent.root_ptr();
  if (auto f = fold(Kind::pow, a, b)) return *f;
  if (is_number(b, 1.0)) return base;
  if (is_number(b, 0.0)) return number(1.0);
  return Expression(make_binary(Kind::pow, a, b));
}

Expression operator-(const Expression& a) {
  if (const auto c = a.constant_value()) return number(-*c);
  return Expression(make_unary(Kind::negate, a.root_ptr()));
}

Expression operator+(const Expression& a, const Expression& b) {
  if (auto f = fold(Kind::add, a.root_ptr(), b.root_ptr())) return *f;
  if (is_number(a.root_ptr(), 0.0)) return b;
  if (is_number(b.root_ptr(), 0.0)) return a;
  return Expression(make_binary(Kind::add, a.root_ptr(), b.root_ptr()));
}

Expression operator-(const Expression& a, const Expression& b) {
  if (auto f = fold(Kind::sub, a.root_ptr(), b.root_ptr())) return *f;
  if (is_number(b.root_ptr(), 0.0)) return a;
  if (is_number(a.root_ptr(), 0.0)) return -b;
  return Expression(make_binary(Kind::sub, a.root_ptr(), b.root_ptr()));
}

Expression operator*(const Expression& a, const Expression& b) {
  if (auto f = fold(Kind::mul, a.root_ptr(), b.root_ptr())) return *f;
  if (is_number(a.root_ptr(), 0.0) || is_number(b.root_ptr(), 0.0)) return number(0.0);
  if (is_number(a.root_ptr(), 1.0)) return b;
  if (is_number(b.root_ptr(), 1.0)) return a;
  return Expression(make_binary(Kind::mul, a.root_ptr(), b.root_ptr()));
}

Expression operator/(const Expression& a, const Expression& b) {
  if (auto f = fold(Kind::div, a.root_ptr(), b.root_ptr())) return *f;
  if (is_number(b.root_ptr(), 1.0)) return a;
  if (is_number(a.root_ptr(), 0.0) && !is_number(b.root_ptr(), 0.0)) return number(0.0);
  return Expression(make_binary(Kind::div, a.root_ptr(), b.root_ptr()));
}

// --------------------------------------------------------- differentiation

namespace {

Expression diff_func(Func f, const Expression& a) {
  switch (f) {
    case Func::sin:
      return call(Func::cos, a);
    case Func::cos:
      return -call(Func::sin, a);
    case Func::tan: {
      const Expression t = call(Func::tan, a);
      return number(1.0) + t * t;
    }
    case Func::asin:
      return number(1.0) / call(Func::sqrt, number(1.0) - a * a);
    case Func::atan:
      return number(1.0) / (number(1.0) + a * a);
    case Func::sinh:
      return call(Func::cosh, a);
    case Func::cosh:
      return call(Func::sinh, a);
    case Func::exp:
      return call(Func::exp, a);
    case Func::log:
      return number(1.0) / a;
    case Func::sqrt:
      return number(0.5) / call(Func::sqrt, a);
    case Func::abs:
      // sign(a); undefined at a = 0, where evaluation reports division by zero
      return a / call(Func::abs, a);
  }
  return number(0.0);
}

}  // namespace

Expression differentiate(const Expression& e, Var var) {
  const Node& n = e.root();
  const auto sub = [](const NodePtr& p) { return Expression(p); };
  switch (n.kind) {
    case Kind::number:
      return number(0.0);
    case Kind::variable:
      return number(n.var == var ? 1.0 : 0.0);
    case Kind::negate:
      return -differentiate(sub(n.lhs), var);
    case Kind::add:
      return differentiate(sub(n.lhs), var) + differentiate(sub(n.rhs), var);
    case Kind::sub:
      return differentiate(sub(n.lhs), var) - differentiate(sub(n.rhs), var);
    case Kind::mul: {
      const Expression a = sub(n.lhs);
      const Expression b = sub(n.rhs);
      return differentiate(a, var) * b + a * differentiate(b, var);
    }
    case Kind::div: {
      const Expression a = sub(n.lhs);
      const Expression b = sub(n.rhs);
      const Expression da = differentiate(a, var);
      if (!b.depends_on(var)) return da / b;
      return (da * b - a * differentiate(b, var)) / (b * b);
    }
    case Kind::pow: {
      const Expression a = sub(n.lhs);
      const Expression b = sub(n.rhs);
      if (!b.depends_on(var)) {
        return b * pow(a, b - number(1.0)) * differentiate(a, var);
      }
      if (!a.depends_on(var)) {
        return e * call(Func::log, a) * differentiate(b, var);
      }
      return e * (differentiate(b, var) * call(Func::log, a) +
                  b * differentiate(a, var) / a);
    }
    case Kind::call: {
      const Expression a = sub(n.lhs);
      return diff_func(n.func, a) * differentiate(a, var);
    }
  }
  return number(0.0);
}

Expression substitute(const Expression& e, const Substitution& replacements) {
  const Node& n = e.root();
  const auto rec = [&](const NodePtr& p) { return substitute(Expression(p), replacements); };
  switch (n.kind) {
    case Kind::number:
      return e;
    case Kind::variable: {
      const auto& r = replacements[static_cast<std::size_t>(n.var)];
      return r ? *r : e;
    }
    case Kind::negate:
      return -rec(n.lhs);
    case Kind::add:
      return rec(n.lhs) + rec(n.rhs);
    case Kind::sub:
      return rec(n.lhs) - rec(n.rhs);
    case Kind::mul:
      return rec(n.lhs) * rec(n.rhs);
    case Kind::div:
      return rec(n.lhs) / rec(n.rhs);
    case Kind::pow:
      return pow(rec(n.lhs), rec(n.rhs));
    case Kind::call:
      return call(n.func, rec(n.lhs));
  }
  return e;
}

}  // namespace clampbeam::expr
