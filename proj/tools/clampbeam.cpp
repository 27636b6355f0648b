// clampbeam: solve, certify and tabulate clamped fourth-order boundary value problems.

#include <iostream>

#include <CLI11.hpp>

#include "clampbeam/cli.hpp"

namespace cli = clampbeam::cli;

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point solver for u'''' = f(x, u, u', u'', u''') with clamped ends"};
  app.require_subcommand(1);

  std::string problem_path;
  cli::SolveFlags solve_flags;
  std::string out_dir;

  auto* solve = app.add_subcommand("solve", "Solve a problem file and write convergence/solution CSVs");
  solve->add_option("problem", problem_path, "Problem file")->required();
  solve->add_option("--n", solve_flags.n, "Grid intervals (even, >= 8)")->capture_default_str();
  solve->add_option("--tol", solve_flags.tol, "Stopping tolerance on e(k)")->capture_default_str();
  solve->add_option("--max-iter", solve_flags.max_iter, "Iteration limit")->capture_default_str();
  solve->add_option("--out-dir", out_dir, "Artifact directory (default: $CLAMPBEAM_OUT_DIR)");

  cli::CheckFlags check_flags;
  double M = 0.0;
  std::array<double, 4> K{};
  auto* check = app.add_subcommand("check", "Check existence/uniqueness conditions on D_M");
  check->add_option("problem", problem_path, "Problem file")->required();
  auto* M_opt = check->add_option("--M", M, "Box size M (overrides the file)");
  std::array<CLI::Option*, 4> K_opts{};
  for (std::size_t k = 0; k < 4; ++k) {
    K_opts[k] = check->add_option("--K" + std::to_string(k + 1), K[k], "Lipschitz constant (overrides the file)");
  }
  check->add_option("--lattice", check_flags.lattice, "Lattice points per axis (>= 5)")->capture_default_str();
  check->add_option("--out-dir", out_dir, "Artifact directory (default: $CLAMPBEAM_OUT_DIR)");

  cli::TableFlags table_flags;
  std::string grids = "100,200,500,1000";
  auto* table = app.add_subcommand("table", "Solve on several grids and emit a convergence table");
  table->add_option("problem", problem_path, "Problem file")->required();
  table->add_option("--grids", grids, "Comma-separated grid sizes")->capture_default_str();
  table->add_option("--tol", table_flags.tol, "Stopping tolerance on e(k)")->capture_default_str();
  table->add_option("--max-iter", table_flags.max_iter, "Iteration limit")->capture_default_str();
  table->add_option("--out-dir", out_dir, "Artifact directory (default: $CLAMPBEAM_OUT_DIR)");

  bool list = false;
  int run_id = 0;
  int dump_id = 0;
  cli::BoundaryOverrides overrides;
  std::array<double, 6> bc{};
  auto* examples = app.add_subcommand("examples", "List, run or print the built-in examples");
  auto* list_opt = examples->add_flag("--list", list, "List the built-in examples");
  auto* run_opt = examples->add_option("--run", run_id, "Check and solve example <id>");
  auto* dump_opt = examples->add_option("--dump", dump_id, "Print the problem file of example <id>");
  list_opt->excludes(run_opt)->excludes(dump_opt);
  run_opt->excludes(dump_opt);
  examples->add_option("--n", solve_flags.n, "Grid intervals")->capture_default_str();
  examples->add_option("--tol", solve_flags.tol, "Stopping tolerance")->capture_default_str();
  examples->add_option("--max-iter", solve_flags.max_iter, "Iteration limit")->capture_default_str();
  examples->add_option("--out-dir", out_dir, "Artifact directory (default: $CLAMPBEAM_OUT_DIR)");
  const std::array<const char*, 6> bc_names = {"--a", "--b", "--A1", "--B1", "--A2", "--B2"};
  std::array<CLI::Option*, 6> bc_opts{};
  for (std::size_t i = 0; i < 6; ++i) {
    bc_opts[i] = examples->add_option(bc_names[i], bc[i], "Boundary data override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  const std::optional<std::filesystem::path> dir =
      out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);

  if (*solve) {
    solve_flags.out_dir = dir;
    return cli::cmd_solve(problem_path, solve_flags, std::cout, std::cerr).exit_status;
  }
  if (*check) {
    if (M_opt->count() > 0) check_flags.M = M;
    for (std::size_t k = 0; k < 4; ++k) {
      if (K_opts[k]->count() > 0) check_flags.K[k] = K[k];
    }
    check_flags.out_dir = dir;
    return cli::cmd_check(problem_path, check_flags, std::cout, std::cerr).exit_status;
  }
  if (*table) {
    try {
      table_flags.grids = cli::parse_grid_list(grids);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kExitInput;
    }
    table_flags.out_dir = dir;
    return cli::cmd_table(problem_path, table_flags, std::cout, std::cerr).exit_status;
  }
  if (*examples) {
    if (list) return cli::cmd_examples_list(std::cout).exit_status;
    if (dump_opt->count() > 0) return cli::cmd_examples_dump(dump_id, std::cout, std::cerr).exit_status;
    if (run_opt->count() > 0) {
      std::array<std::optional<double>*, 6> targets = {&overrides.a,  &overrides.b,  &overrides.A1,
                                                       &overrides.B1, &overrides.A2, &overrides.B2};
      for (std::size_t i = 0; i < 6; ++i) {
        if (bc_opts[i]->count() > 0) *targets[i] = bc[i];
      }
      solve_flags.out_dir = dir;
      return cli::cmd_examples_run(run_id, solve_flags, overrides, std::cout, std::cerr).exit_status;
    }
    std::cerr << "error: examples needs --list, --run <id> or --dump <id>\n";
    return cli::kExitInput;
  }
  return cli::kExitInput;
}
