#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lmoment/sdp.hpp"

namespace lmoment::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // unexpected internal error
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIndeterminate = 4;

struct ScenarioOptions {
  std::string kind;                 // dirac-mix | poly-density
  std::vector<double> atoms;        // dirac-mix locations, equal weights
  double a = 1.0;                   // weight of the Lebesgue part
  std::vector<double> coeffs;       // poly-density, ascending powers
  int order = 0;
  std::string out;                  // empty: stdout
};

struct SolverOptions {
  int dmax = 5;
  double tol = 1e-8;
  double infeas_eps = 1e-6;
  std::optional<double> linf_bound;
  bool no_precondition = false;

  SolverConfig solver_config() const;
};

struct DetectOptions {
  std::string set_file;
  std::string moments_file;
  std::string gamma_file;  // empty: box Lebesgue moments
  SolverOptions solver;
  bool all_levels = false;
  std::string out;
};

struct TableOptions {
  int which = 1;
  std::optional<int> dmin;
  std::optional<int> dmax;
  double weight_step = 0.1;
  double tol = 1e-8;
  double infeas_eps = 1e-6;
  std::string out_md;
  std::string out_csv;
  std::string out_json;
};

struct HausdorffOptions {
  std::string moments_file;
  double c = 1.0;
  std::optional<double> p;
  int n_max = 50;
  std::string arithmetic = "exact";  // exact | double
  std::string out;
};

struct DumpOptions {
  std::string set_file;
  std::string moments_file;
  std::string gamma_file;
  int d = 1;
  std::optional<double> linf_bound;
  bool dual = false;
  bool no_precondition = false;
  std::string out;
};

// Each command writes its human-readable output to `out`, diagnostics to
// `err`, and returns the process exit code. `command` is the echoed argv.
int cmd_scenario(const ScenarioOptions& o, const std::string& command, std::ostream& out, std::ostream& err);
int cmd_detect(const DetectOptions& o, const std::string& command, std::ostream& out, std::ostream& err);
int cmd_table(const TableOptions& o, const std::string& command, std::ostream& out, std::ostream& err);
int cmd_hausdorff(const HausdorffOptions& o, const std::string& command, std::ostream& out, std::ostream& err);
int cmd_dump_problem(const DumpOptions& o, const std::string& command, std::ostream& out, std::ostream& err);

}  // namespace lmoment::cli
