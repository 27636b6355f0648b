#include "clampbeam/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "clampbeam/builtin_examples.hpp"
#include "clampbeam/errors.hpp"

namespace clampbeam::cli {

namespace fs = std::filesystem;

std::optional<fs::path> resolve_out_dir(const std::optional<fs::path>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("CLAMPBEAM_OUT_DIR"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return std::nullopt;
}

std::string format_real(double value) { return fmt::format("{:.17g}", value == 0.0 ? 0.0 : value); }

namespace {

bool is_transformed(const CanonicalProblem& problem) {
  const auto& bc = problem.raw().boundary;
  return bc.a != 0.0 || bc.b != 1.0 || !problem.cubic().is_zero();
}

void write_artifact(const std::optional<fs::path>& dir, const std::string& name,
                    const std::string& content, RunArtifacts& artifacts) {
  if (!dir || content.empty()) return;
  fs::create_directories(*dir);
  const fs::path path = *dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out << content;
  artifacts.written.push_back(path);
}

std::string_view status_text(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iterations:
      return "max-iterations-exceeded";
    case SolveStatus::diverged:
      return "diverged";
  }
  return "?";
}

std::vector<double> split_reals(std::string_view line, int line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto comma = std::min(line.find(',', pos), line.size());
    const std::string cell(line.substr(pos, comma - pos));
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) {
      throw ConfigError(fmt::format("solution CSV line {}: bad number '{}'", line_no, cell));
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

RunArtifacts with_status(int status) {
  RunArtifacts a;
  a.exit_status = status;
  return a;
}

template <typename Fn>
RunArtifacts guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return with_status(kExitInput);
  } catch (const expr::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return with_status(kExitInput);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return with_status(kExitInput);
  } catch (const EvalError& e) {
    err << "error: " << e.what() << '\n';
    return with_status(kExitFailed);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return with_status(kExitFailed);
  }
}

}  // namespace

std::string convergence_csv(const SolveReport& report) {
  const bool with_eu = !report.eu_history.empty();
  std::string out = with_eu ? "k,e,eu\n" : "k,e\n";
  for (std::size_t k = 0; k < report.e_history.size(); ++k) {
    out += fmt::format("{},{}", k + 1, format_real(report.e_history[k]));
    if (with_eu) out += "," + format_real(report.eu_history[k]);
    out += '\n';
  }
  return out;
}

std::string solution_csv(const SolveReport& report, const CanonicalProblem& problem) {
  const auto& p = report.profile;
  const bool transformed = is_transformed(problem);
  std::string out = transformed ? "x,u,u1,u2,u3,t,w\n" : "x,u,u1,u2,u3\n";
  const GridFunction w = recover_solution(p.u, problem);
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    const double x = p.u.grid().node(i);
    out += fmt::format("{},{},{},{},{}", format_real(x), format_real(p.u[i]), format_real(p.y[i]),
                       format_real(p.v[i]), format_real(p.z[i]));
    if (transformed) out += fmt::format(",{},{}", format_real(problem.physical(x)), format_real(w[i]));
    out += '\n';
  }
  return out;
}

IterateProfile read_solution_csv(std::string_view text) {
  std::vector<std::array<double, 4>> rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    const auto cells = split_reals(line, line_no);
    if (cells.size() < 5) throw ConfigError(fmt::format("solution CSV line {}: too few columns", line_no));
    rows.push_back({cells[1], cells[2], cells[3], cells[4]});
  }
  if (rows.size() < 2) throw ConfigError("solution CSV has no data rows");
  const Grid grid(static_cast<int>(rows.size()) - 1);
  IterateProfile p{GridFunction(grid), GridFunction(grid), GridFunction(grid), GridFunction(grid)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.u[i] = rows[i][0];
    p.y[i] = rows[i][1];
    p.v[i] = rows[i][2];
    p.z[i] = rows[i][3];
  }
  return p;
}

Triplet triplet_from_profile(const CanonicalProblem& problem, const IterateProfile& profile) {
  const std::size_t n = profile.v.size() - 1;
  return {nonlinear_term(problem, profile), profile.v[0], profile.v[n]};
}

std::string format_condition_report(const analysis::ConditionReport& r) {
  std::string out;
  out += fmt::format("M       = {}\n", format_real(r.M));
  out += fmt::format("sup|f|  = {}  [{}]\n", format_real(r.sup_f), analysis::to_string(r.sup_f_provenance));
  for (std::size_t k = 0; k < 4; ++k) {
    out += fmt::format("K{}      = {}  [{}]\n", k + 1, format_real(r.K[k]), analysis::to_string(r.K_provenance[k]));
  }
  out += fmt::format("q       = {}\n", format_real(r.q));
  out += fmt::format("existence (sup|f| <= M/2): {}\n", r.lemma1_ok ? "ok" : "FAILED");
  out += fmt::format("uniqueness and contraction (q < 1/2): {}\n", r.theorem1_ok ? "ok" : "FAILED");
  return out;
}

// ------------------------------------------------------------------ solve

namespace {

struct SolveRun {
  CanonicalProblem problem;
  SolveReport report;
};

SolveRun solve_file(const ProblemFile& file, int n, double tol, int max_iter) {
  CanonicalProblem problem = canonicalize(file.problem);
  SolverConfig config;
  config.n = n;
  config.tol = tol;
  config.max_iter = max_iter;
  config.validate();
  const Grid grid(n);
  SolveReport report = solve(problem, config, problem.exact_on(grid));
  return {std::move(problem), std::move(report)};
}

std::string summary_row(const SolveReport& report, int n) {
  const std::string eu = report.eu_history.empty() ? "-" : fmt::format("{:.4e}", report.eu_history.back());
  return fmt::format("{}, {}, {}, {:.4e}", n, report.iterations, eu, report.e_history.back());
}

}  // namespace

RunArtifacts run_solve(const ProblemFile& file, const SolveFlags& flags, std::ostream& out) {
  const auto dir = resolve_out_dir(flags.out_dir);
  SolveRun run = solve_file(file, flags.n, flags.tol, flags.max_iter);

  RunArtifacts artifacts;
  artifacts.convergence_csv = convergence_csv(run.report);
  artifacts.solution_csv = solution_csv(run.report, run.problem);
  artifacts.exit_status = run.report.converged() ? kExitOk : kExitFailed;

  out << "N, K, eu(K), e(K)\n" << summary_row(run.report, flags.n) << '\n';
  out << fmt::format("status: {}  residual: {:.3e}\n", status_text(run.report.status), run.report.residual);

  write_artifact(dir, "convergence.csv", artifacts.convergence_csv, artifacts);
  write_artifact(dir, "solution.csv", artifacts.solution_csv, artifacts);
  return artifacts;
}

RunArtifacts cmd_solve(const fs::path& problem_file, const SolveFlags& flags, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] { return run_solve(load_problem_file(problem_file), flags, out); });
}

// ------------------------------------------------------------------ check

RunArtifacts run_check(const ProblemFile& file, const CheckFlags& flags, std::ostream& out) {
  const auto dir = resolve_out_dir(flags.out_dir);
  const auto M = flags.M ? flags.M : file.M;
  if (!M) throw ConfigError("no M given (use --M or an 'M' key in the problem file)");

  analysis::CheckOptions options;
  for (std::size_t k = 0; k < 4; ++k) options.K[k] = flags.K[k] ? flags.K[k] : file.K[k];
  options.lattice.points = flags.lattice;

  const CanonicalProblem problem = canonicalize(file.problem);
  RunArtifacts artifacts;
  try {
    const auto report = analysis::check_conditions(problem.rhs(), *M, options);
    artifacts.condition_report = format_condition_report(report);
    artifacts.exit_status = report.theorem1_ok ? kExitOk : kExitFailed;
  } catch (const analysis::UndefinedInDomain& e) {
    artifacts.condition_report =
        fmt::format("M       = {}\n{}\nconditions cannot be verified on D_M; uniqueness not certified\n",
                    format_real(*M), e.what());
    artifacts.exit_status = kExitFailed;
  }
  out << artifacts.condition_report;
  write_artifact(dir, "condition_report.txt", artifacts.condition_report, artifacts);
  return artifacts;
}

RunArtifacts cmd_check(const fs::path& problem_file, const CheckFlags& flags, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] { return run_check(load_problem_file(problem_file), flags, out); });
}

// ------------------------------------------------------------------ table

std::vector<int> parse_grid_list(std::string_view text) {
  std::vector<int> grids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    std::string_view cell = text.substr(pos, comma - pos);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), n);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ConfigError(fmt::format("bad grid size '{}' in '{}'", cell, text));
    }
    grids.push_back(n);
    pos = comma + 1;
  }
  return grids;
}

RunArtifacts run_table(const ProblemFile& file, const TableFlags& flags, std::ostream& out) {
  const auto dir = resolve_out_dir(flags.out_dir);
  if (flags.grids.empty()) throw ConfigError("no grid sizes given");
  for (int n : flags.grids) Grid{n};

  struct Row {
    std::optional<SolveReport> report;
    std::string error;
  };
  std::vector<std::future<Row>> jobs;
  for (int n : flags.grids) {
    jobs.push_back(std::async(std::launch::async, [&file, &flags, n]() -> Row {
      try {
        return {solve_file(file, n, flags.tol, flags.max_iter).report, {}};
      } catch (const std::exception& e) {
        return {std::nullopt, e.what()};
      }
    }));
  }

  const bool with_eu = file.problem.exact.has_value();
  RunArtifacts artifacts;
  artifacts.table_csv = with_eu ? "N,K,eu,e,status\n" : "N,K,e,status\n";
  out << (with_eu ? "N, K, eu(K), e(K), status\n" : "N, K, e(K), status\n");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const int n = flags.grids[i];
    const Row row = jobs[i].get();
    if (!row.report) {
      artifacts.table_csv += with_eu ? fmt::format("{},,,,error\n", n) : fmt::format("{},,,error\n", n);
      out << fmt::format("{}, error: {}\n", n, row.error);
      artifacts.exit_status = kExitFailed;
      continue;
    }
    const SolveReport& r = *row.report;
    const auto status = status_text(r.status);
    if (with_eu) {
      artifacts.table_csv += fmt::format("{},{},{},{},{}\n", n, r.iterations, format_real(r.eu_history.back()),
                                         format_real(r.e_history.back()), status);
      out << fmt::format("{}, {}, {:.4e}, {:.4e}, {}\n", n, r.iterations, r.eu_history.back(),
                         r.e_history.back(), status);
    } else {
      artifacts.table_csv +=
          fmt::format("{},{},{},{}\n", n, r.iterations, format_real(r.e_history.back()), status);
      out << fmt::format("{}, {}, {:.4e}, {}\n", n, r.iterations, r.e_history.back(), status);
    }
    if (!r.converged()) artifacts.exit_status = kExitFailed;
  }
  write_artifact(dir, "table.csv", artifacts.table_csv, artifacts);
  return artifacts;
}

RunArtifacts cmd_table(const fs::path& problem_file, const TableFlags& flags, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] { return run_table(load_problem_file(problem_file), flags, out); });
}

// --------------------------------------------------------------- examples

RunArtifacts cmd_examples_list(std::ostream& out) {
  for (const BuiltinExample& ex : builtin_examples()) {
    out << fmt::format("[{}] {}\n    {}\n    {}\n", ex.id, ex.title, ex.equation, ex.boundary);
    if (ex.file.M) {
      out << fmt::format("    M = {}", *ex.file.M);
      const bool have_K = ex.file.K[0].has_value();
      if (have_K) {
        analysis::Lipschitz K{};
        for (std::size_t k = 0; k < 4; ++k) K[k] = ex.file.K[k].value_or(0.0);
        out << fmt::format(", K = ({:.6g}, {:.6g}, {:.6g}, {:.6g}), q = {:.4f}", K[0], K[1], K[2], K[3],
                           analysis::contraction_factor(K));
      } else {
        out << ", no Lipschitz constants (existence only)";
      }
      out << '\n';
    }
    if (!ex.notes.empty()) out << "    " << ex.notes << '\n';
  }
  return {};
}

RunArtifacts cmd_examples_dump(int id, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BuiltinExample& ex = builtin_example(id);
    out << "# " << ex.title << '\n' << format_problem_file(ex.file);
    return RunArtifacts{};
  });
}

RunArtifacts cmd_examples_run(int id, const SolveFlags& flags, const BoundaryOverrides& overrides,
                              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BuiltinExample& ex = builtin_example(id);
    ProblemFile file = ex.file;
    auto& bc = file.problem.boundary;
    bc.a = overrides.a.value_or(bc.a);
    bc.b = overrides.b.value_or(bc.b);
    bc.A1 = overrides.A1.value_or(bc.A1);
    bc.B1 = overrides.B1.value_or(bc.B1);
    bc.A2 = overrides.A2.value_or(bc.A2);
    bc.B2 = overrides.B2.value_or(bc.B2);
    bc.validate();

    out << fmt::format("== {}\n   {}\n   {}\n\n-- condition check\n", ex.title, ex.equation, ex.boundary);
    CheckFlags check_flags;
    RunArtifacts check = run_check(file, check_flags, out);
    if (check.exit_status != kExitOk) {
      out << (ex.unique ? "warning: conditions not certified; solving anyway\n"
                        : "warning: existence only, uniqueness not established; solving anyway\n");
    }

    out << "\n-- solve\n";
    SolveFlags solve_flags = flags;
    solve_flags.out_dir.reset();
    RunArtifacts solved = run_solve(file, solve_flags, out);
    solved.condition_report = check.condition_report;
    solved.exit_status = std::max(check.exit_status, solved.exit_status);

    if (const auto dir = resolve_out_dir(flags.out_dir)) {
      const std::string prefix = fmt::format("example{}_", id);
      write_artifact(dir, prefix + "condition_report.txt", solved.condition_report, solved);
      write_artifact(dir, prefix + "convergence.csv", solved.convergence_csv, solved);
      write_artifact(dir, prefix + "solution.csv", solved.solution_csv, solved);
    }
    return solved;
  });
}

}  // namespace clampbeam::cli
