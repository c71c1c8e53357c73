#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lmoment/version.hpp"
#include "manifest.hpp"

namespace cli = lmoment::cli;

namespace {

void add_solver_flags(CLI::App* app, cli::SolverOptions& s) {
  app->add_option("--dmax", s.dmax, "Deepest level d (moments up to order 2d)")->check(CLI::NonNegativeNumber);
  app->add_option("--tol", s.tol, "Feasibility tolerance on block eigenvalues")->check(CLI::PositiveNumber);
  app->add_option("--infeas-eps", s.infeas_eps, "Phase-1 margin above which a level is Infeasible")
      ->check(CLI::PositiveNumber);
  app->add_option("--linf-bound", s.linf_bound, "Add z_0k <= c (density bounded by c)");
  app->add_flag("--no-precondition", s.no_precondition, "Use the blocks in the raw monomial basis");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-sequence tests for densities in L_p: SDP hierarchy and Hausdorff baseline"};
  app.set_version_flag("--version", std::string(lmoment::kVersion));
  app.require_subcommand(1);

  cli::ScenarioOptions scenario;
  auto* sc = app.add_subcommand("scenario", "Write the moment vector of a test scenario on [0,1]");
  sc->add_option("kind", scenario.kind, "dirac-mix or poly-density")->required();
  sc->add_option("--s", scenario.atoms, "Atom location (repeat for several atoms of equal weight)");
  sc->add_option("--a", scenario.a, "Weight of the Lebesgue part (atoms share 1 - a)");
  sc->add_option("--coeffs", scenario.coeffs, "Density coefficients in ascending powers, e.g. 0,2")->delimiter(',');
  sc->add_option("--order", scenario.order, "Highest moment order")->required();
  sc->add_option("--out", scenario.out, "Output file (default stdout)");

  cli::DetectOptions detect;
  auto* de = app.add_subcommand("detect", "Run the SDP hierarchy on a moment sequence");
  de->add_option("set", detect.set_file, "Semialgebraic set JSON")->required()->check(CLI::ExistingFile);
  de->add_option("moments", detect.moments_file, "Moment vector JSON")->required()->check(CLI::ExistingFile);
  de->add_option("--gamma", detect.gamma_file, "Reference Lebesgue moments (default: uniform on the box)")
      ->check(CLI::ExistingFile);
  add_solver_flags(de, detect.solver);
  de->add_flag("--all-levels", detect.all_levels, "Keep solving after the first Infeasible level");
  de->add_option("--out", detect.out, "Report JSON file");

  cli::TableOptions table;
  auto* ta = app.add_subcommand("table", "Reproduce the one-Dirac (1) or two-Dirac (2) detection table");
  ta->add_option("which", table.which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  ta->add_option("--dmin", table.dmin, "First column level");
  ta->add_option("--dmax", table.dmax, "Last column level");
  ta->add_option("--weights-grid", table.weight_step, "Atom weight step (must divide 1)");
  ta->add_option("--tol", table.tol, "Feasibility tolerance")->check(CLI::PositiveNumber);
  ta->add_option("--infeas-eps", table.infeas_eps, "Infeasibility threshold")->check(CLI::PositiveNumber);
  ta->add_option("--markdown", table.out_md, "Markdown output file");
  ta->add_option("--csv", table.out_csv, "CSV output file");
  ta->add_option("--json", table.out_json, "JSON output file with cell details and manifest");

  cli::HausdorffOptions hausdorff;
  auto* ha = app.add_subcommand("hausdorff", "Finite-difference tests for bounded and L_p densities on [0,1]");
  ha->add_option("moments", hausdorff.moments_file, "Univariate moment vector JSON")->required()->check(CLI::ExistingFile);
  ha->add_option("--c", hausdorff.c, "Bound c")->required()->check(CLI::PositiveNumber);
  ha->add_option("--p", hausdorff.p, "Also run the L_p test with this p > 1");
  ha->add_option("--n-max", hausdorff.n_max, "Last row of the difference table");
  ha->add_option("--arithmetic", hausdorff.arithmetic, "exact (rational) or double")
      ->check(CLI::IsMember({"exact", "double"}));
  ha->add_option("--out", hausdorff.out, "Report JSON file");

  cli::DumpOptions dump;
  auto* du = app.add_subcommand("dump-problem", "Write one hierarchy level in the conic text format");
  du->add_option("set", dump.set_file, "Semialgebraic set JSON")->required()->check(CLI::ExistingFile);
  du->add_option("moments", dump.moments_file, "Moment vector JSON")->required()->check(CLI::ExistingFile);
  du->add_option("--gamma", dump.gamma_file, "Reference Lebesgue moments")->check(CLI::ExistingFile);
  du->add_option("--d", dump.d, "Level")->required();
  du->add_option("--linf-bound", dump.linf_bound, "Add z_0k <= c");
  du->add_flag("--dual", dump.dual, "Dump the sum-of-squares dual instead of the primal");
  du->add_flag("--no-precondition", dump.no_precondition, "Omit the block congruences");
  du->add_option("--out", dump.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  const std::string command = cli::join_argv(argc, argv);
  if (sc->parsed()) return cli::cmd_scenario(scenario, command, std::cout, std::cerr);
  if (de->parsed()) return cli::cmd_detect(detect, command, std::cout, std::cerr);
  if (ta->parsed()) return cli::cmd_table(table, command, std::cout, std::cerr);
  if (ha->parsed()) return cli::cmd_hausdorff(hausdorff, command, std::cout, std::cerr);
  if (du->parsed()) return cli::cmd_dump_problem(dump, command, std::cout, std::cerr);
  return cli::kExitUsage;
}
