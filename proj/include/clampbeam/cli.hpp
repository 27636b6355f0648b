#pragma once

// Command implementations behind the `clampbeam` executable. Each command
// prints a human-readable summary, returns its artifacts, and writes them to
// the output directory when one is configured (--out-dir, falling back to
// the CLAMPBEAM_OUT_DIR environment variable).
//
// Exit status: 0 converged / certified, 1 condition check failed or the
// iteration did not converge, 2 input error.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clampbeam/analysis.hpp"
#include "clampbeam/problem.hpp"
#include "clampbeam/solver.hpp"

namespace clampbeam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

struct RunArtifacts {
  int exit_status = kExitOk;
  std::string convergence_csv;
  std::string solution_csv;
  std::string condition_report;
  std::string table_csv;
  std::vector<std::filesystem::path> written;
};

struct SolveFlags {
  int n = 100;
  double tol = 1e-15;
  int max_iter = 200;
  std::optional<std::filesystem::path> out_dir;
};

struct CheckFlags {
  std::optional<double> M;
  std::array<std::optional<double>, 4> K;
  int lattice = 9;
  std::optional<std::filesystem::path> out_dir;
};

struct TableFlags {
  std::vector<int> grids = {100, 200, 500, 1000};
  double tol = 1e-15;
  int max_iter = 200;
  std::optional<std::filesystem::path> out_dir;
};

/// Boundary-data overrides for `examples --run`.
struct BoundaryOverrides {
  std::optional<double> a, b, A1, B1, A2, B2;
};

/// `--out-dir` if given, else $CLAMPBEAM_OUT_DIR, else none.
std::optional<std::filesystem::path> resolve_out_dir(const std::optional<std::filesystem::path>& flag);

/// Doubles rendered with 17 significant digits.
std::string format_real(double value);

std::string convergence_csv(const SolveReport& report);
std::string solution_csv(const SolveReport& report, const CanonicalProblem& problem);
/// Parses the u, u', u'', u''' columns of a solution CSV back into a profile.
IterateProfile read_solution_csv(std::string_view text);
/// Triplet (f(x, u, u', u'', u'''), u''(0), u''(1)) reconstructed from a profile.
Triplet triplet_from_profile(const CanonicalProblem& problem, const IterateProfile& profile);

std::string format_condition_report(const analysis::ConditionReport& report);

RunArtifacts run_solve(const ProblemFile& file, const SolveFlags& flags, std::ostream& out);
RunArtifacts run_check(const ProblemFile& file, const CheckFlags& flags, std::ostream& out);
RunArtifacts run_table(const ProblemFile& file, const TableFlags& flags, std::ostream& out);

// Path-based entry points: parse errors become exit status 2 with a message on `err`.
RunArtifacts cmd_solve(const std::filesystem::path& problem_file, const SolveFlags& flags,
                       std::ostream& out, std::ostream& err);
RunArtifacts cmd_check(const std::filesystem::path& problem_file, const CheckFlags& flags,
                       std::ostream& out, std::ostream& err);
RunArtifacts cmd_table(const std::filesystem::path& problem_file, const TableFlags& flags,
                       std::ostream& out, std::ostream& err);

RunArtifacts cmd_examples_list(std::ostream& out);
RunArtifacts cmd_examples_run(int id, const SolveFlags& flags, const BoundaryOverrides& overrides,
                              std::ostream& out, std::ostream& err);
/// Prints the problem file of a built-in example.
RunArtifacts cmd_examples_dump(int id, std::ostream& out, std::ostream& err);

/// Parses "100,200,500" into grid sizes.
std::vector<int> parse_grid_list(std::string_view text);

}  // namespace clampbeam::cli
