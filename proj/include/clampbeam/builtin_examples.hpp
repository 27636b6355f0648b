#pragma once

#include <optional>
#include <span>
#include <string>

#include "clampbeam/problem.hpp"

namespace clampbeam {

/// One of the six reference problems shipped with the tool, with its
/// hand-derived box size M and Lipschitz constants where they exist.
struct BuiltinExample {
  int id;
  std::string title;
  std::string equation;
  std::string boundary;
  ProblemFile file;
  /// Iteration count reached at tol 1e-15 in the reference computations.
  std::optional<int> reference_iterations;
  /// False when only existence, not uniqueness, is established.
  bool unique = true;
  std::string notes;
};

std::span<const BuiltinExample> builtin_examples();

/// Throws ConfigError for ids outside 1..6.
const BuiltinExample& builtin_example(int id);

}  // namespace clampbeam
