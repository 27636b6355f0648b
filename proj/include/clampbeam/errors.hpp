#pragma once

#include <stdexcept>
#include <string>

namespace clampbeam {

/// Argument outside the domain of a function (kernel arguments, negative
/// Lipschitz constants, q >= 1/2 in the a-priori bound, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration: bad grid size, malformed problem file, unknown key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Expression could not be evaluated (math domain error, division by zero).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fixed-point iteration failed (non-finite iterate, divergence).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clampbeam
