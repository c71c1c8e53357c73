#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lmoment/errors.hpp"
#include "lmoment/hausdorff.hpp"
#include "lmoment/hierarchy.hpp"
#include "lmoment/json_io.hpp"
#include "lmoment/measures.hpp"
#include "manifest.hpp"
#include "tables.hpp"

namespace lmoment::cli {
namespace {

using nlohmann::json;
namespace lj = lmoment::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ArgumentError("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

// Runs a command body and maps library errors to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IncompleteDataError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& k : e.missing_keys()) err << "  missing " << k << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::string fmt(double v, int prec = 6) {
  if (std::isnan(v)) return "-";
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

struct LoadedInputs {
  SemialgebraicSet set;
  MomentVector y;
  MomentVector gamma;
};

LoadedInputs load_inputs(const std::string& set_file, const std::string& moments_file, const std::string& gamma_file,
                         int order, ManifestBuilder& manifest) {
  manifest.add_input(set_file);
  manifest.add_input(moments_file);
  SemialgebraicSet set = lj::set_from_json(read_json_file(set_file));
  MomentVector y = lj::moment_vector_from_json(read_json_file(moments_file));
  if (y.nvars() != set.nvars()) {
    throw ValidationError("moment vector has " + std::to_string(y.nvars()) + " variables, the set has " +
                          std::to_string(set.nvars()));
  }
  if (!gamma_file.empty()) {
    manifest.add_input(gamma_file);
    MomentVector gamma = lj::moment_vector_from_json(read_json_file(gamma_file));
    return {std::move(set), std::move(y), std::move(gamma)};
  }
  MomentVector gamma = box_lebesgue_moments(set.box(), order);
  return {std::move(set), std::move(y), std::move(gamma)};
}

int detect_exit_code(const DetectionReport& report) {
  if (report.conclusion.kind == ConclusionKind::NoDensityFrom) return kExitInfeasible;
  if (report.has_indeterminate || report.conclusion.kind == ConclusionKind::Inconclusive) return kExitIndeterminate;
  return kExitOk;
}

void print_manifest_line(std::ostream& out, const json& manifest) { out << "manifest: " << manifest.dump() << '\n'; }

}  // namespace

SolverConfig SolverOptions::solver_config() const {
  SolverConfig c;
  c.feas_tol = tol;
  c.infeas_threshold = infeas_eps;
  c.validate();
  return c;
}

int cmd_scenario(const ScenarioOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
  (void)command;
  return guarded(err, [&] {
    if (o.order < 0) throw ArgumentError("--order must be >= 0");
    const Box box{{0.0, 1.0}};
    MomentVector y = box_lebesgue_moments(box, o.order);
    if (o.kind == "dirac-mix") {
      if (!o.coeffs.empty()) throw ArgumentError("--coeffs belongs to poly-density");
      MixtureScenario sc;
      sc.a = o.a;
      for (double s : o.atoms) sc.atoms.push_back({{s}, 1.0 / static_cast<double>(o.atoms.size())});
      if (sc.a < 1.0 && sc.atoms.empty()) throw ArgumentError("dirac-mix with a < 1 needs at least one --s");
      sc.validate(box);
      y = mixture_moments(sc, box, o.order);
    } else if (o.kind == "poly-density") {
      if (!o.atoms.empty()) throw ArgumentError("--s belongs to dirac-mix");
      if (o.coeffs.empty()) throw ArgumentError("poly-density needs --coeffs");
      const Polynomial f = Polynomial::univariate(o.coeffs);
      for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        if (evaluate(f, std::span<const double>(&x, 1)) < -1e-12) {
          throw ArgumentError("density is negative at x=" + fmt(x));
        }
      }
      y = density_moments(f, box, o.order);
    } else {
      throw ArgumentError("unknown scenario kind '" + o.kind + "' (dirac-mix or poly-density)");
    }
    const std::string text = lj::to_json(y).dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      write_text(o.out, text);
    }
    return kExitOk;
  });
}

int cmd_detect(const DetectOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ManifestBuilder manifest(command);
    manifest.stage("load");
    HierarchyConfig config;
    config.dmax = o.solver.dmax;
    config.solver = o.solver.solver_config();
    config.linf_bound = o.solver.linf_bound;
    config.run_all_levels = o.all_levels;
    config.precondition = !o.solver.no_precondition;
    config.validate();
    manifest.set_tolerances(config.solver);
    const LoadedInputs in = load_inputs(o.set_file, o.moments_file, o.gamma_file, 2 * config.dmax, manifest);

    manifest.stage("solve");
    const DetectionReport report = run_detection(in.set, in.gamma, in.y, config);

    manifest.stage("write");
    out << " d  status         rho_d          margin        seconds\n";
    for (const auto& rec : report.levels) {
      out << std::setw(2) << rec.d << "  " << std::left << std::setw(13) << to_string(rec.status) << "  "
          << std::setw(13) << fmt(rec.rho) << "  " << std::setw(12) << fmt(rec.margin) << "  " << std::right
          << fmt(rec.seconds, 3) << '\n';
    }
    out << "conclusion: " << to_string(report.conclusion.kind);
    if (report.conclusion.kind == ConclusionKind::NoDensityFrom) out << " (p >= " << report.conclusion.exponent() << ")";
    out << '\n' << interpret(report) << '\n';

    json doc = {{"report", lj::to_json(report)}};
    doc["manifest"] = lj::to_json(manifest.finish());
    if (!o.out.empty()) write_text(o.out, doc.dump(2) + "\n");
    print_manifest_line(out, doc["manifest"]);
    return detect_exit_code(report);
  });
}

int cmd_table(const TableOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ManifestBuilder manifest(command);
    manifest.stage("setup");
    TableSpec spec = reference_table(o.which, o.weight_step);
    if (o.dmin) spec.dmin = *o.dmin;
    if (o.dmax) spec.dmax = *o.dmax;
    SolverOptions so;
    so.tol = o.tol;
    so.infeas_eps = o.infeas_eps;
    spec.config.solver = so.solver_config();
    manifest.set_tolerances(spec.config.solver);
    const unsigned threads = thread_count_from_env();

    manifest.stage("sweep");
    const TableResult result = run_table(spec, threads);

    manifest.stage("write");
    const std::string md = render_markdown(result);
    const std::string csv = render_csv(result);
    out << md;
    out << "slowest cell: " << fmt(result.max_cell_seconds, 3) << " s (" << threads << " threads)\n";
    if (!o.out_md.empty()) write_text(o.out_md, md);
    if (!o.out_csv.empty()) write_text(o.out_csv, csv);
    json doc = {{"table", table_to_json(result)}};
    doc["manifest"] = lj::to_json(manifest.finish());
    if (!o.out_json.empty()) write_text(o.out_json, doc.dump(2) + "\n");
    print_manifest_line(out, doc["manifest"]);
    return kExitOk;
  });
}

int cmd_hausdorff(const HausdorffOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ManifestBuilder manifest(command);
    manifest.stage("load");
    manifest.add_input(o.moments_file);
    manifest.set_tolerances(json{{"hausdorff_tolerance", kHausdorffTolerance}, {"arithmetic", o.arithmetic}});
    const MomentVector y = lj::moment_vector_from_json(read_json_file(o.moments_file));
    if (y.nvars() != 1) throw ValidationError("hausdorff needs a univariate moment sequence");
    if (o.n_max < 0) throw ArgumentError("--n-max must be >= 0");
    if (o.arithmetic != "exact" && o.arithmetic != "double") throw ArgumentError("--arithmetic is exact or double");
    int n_max = o.n_max;
    if (n_max > y.max_order()) {
      throw ArgumentError("--n-max " + std::to_string(n_max) + " needs moments up to order " + std::to_string(n_max) +
                          ", the file has " + std::to_string(y.max_order()));
    }
    if (o.arithmetic == "double" && n_max > kDoubleRowCap) {
      err << "warning: double arithmetic is unreliable beyond n=" << kDoubleRowCap << "; capping n_max\n";
      n_max = kDoubleRowCap;
    }

    manifest.stage("check");
    MarkovResult markov;
    std::optional<LpResult> lp;
    if (o.arithmetic == "exact") {
      std::vector<Rational> s;
      for (int k = 0; k <= n_max; ++k) s.push_back(rationalize(y.at(MultiIndex{k})));
      markov = check_markov(std::span<const Rational>(s), o.c, n_max);
      if (o.p) lp = check_lp(std::span<const Rational>(s), *o.p, o.c, n_max);
    } else {
      std::vector<double> s;
      for (int k = 0; k <= n_max; ++k) s.push_back(y.at(MultiIndex{k}));
      markov = check_markov(std::span<const double>(s), o.c, n_max);
      if (o.p) lp = check_lp(std::span<const double>(s), *o.p, o.c, n_max);
    }

    manifest.stage("write");
    const bool pass = markov.pass && (!lp || lp->pass);
    json rep = {{"c", o.c}, {"n_max", n_max}, {"arithmetic", o.arithmetic}, {"pass", pass}};
    rep["markov"] = {{"pass", markov.pass}, {"n", markov.n}, {"j", markov.j}, {"value", markov.value},
                     {"bound", markov.bound}, {"negative", markov.negative}};
    out << "bounded density test (c=" << fmt(o.c) << ", n <= " << n_max << "): ";
    if (markov.pass) {
      out << "pass\n";
    } else {
      out << "fail at n=" << markov.n << ", j=" << markov.j << ": s_nj=" << fmt(markov.value, 10)
          << (markov.negative ? " < 0" : " > c/(n+1)=" + fmt(markov.bound, 10)) << '\n';
    }
    if (lp) {
      rep["lp"] = {{"p", *o.p}, {"pass", lp->pass}, {"not_positive", lp->not_positive}, {"n", lp->n},
                   {"j", lp->j}, {"value", lp->value}, {"max_r", lp->max_r}};
      out << "L_p test (p=" << fmt(*o.p) << "): ";
      if (lp->pass) {
        out << "pass, max r_n=" << fmt(lp->max_r, 10) << '\n';
      } else if (lp->not_positive) {
        out << "fail, s_nj < 0 at n=" << lp->n << ", j=" << lp->j << '\n';
      } else {
        out << "fail at n=" << lp->n << ": r_n=" << fmt(lp->value, 10) << " >= c\n";
      }
    }
    json doc = {{"report", rep}};
    doc["manifest"] = lj::to_json(manifest.finish());
    if (!o.out.empty()) write_text(o.out, doc.dump(2) + "\n");
    print_manifest_line(out, doc["manifest"]);
    return pass ? kExitOk : kExitInfeasible;
  });
}

int cmd_dump_problem(const DumpOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
  (void)command;
  return guarded(err, [&] {
    if (o.d < 0) throw ArgumentError("--d must be >= 0");
    ManifestBuilder manifest(command);
    const LoadedInputs in = load_inputs(o.set_file, o.moments_file, o.gamma_file, 2 * o.d, manifest);
    const SdpProblem problem = o.dual ? assemble_dual(in.set, in.gamma, in.y, o.d)
                                      : assemble_primal(in.set, in.gamma, in.y, o.d, o.linf_bound, !o.no_precondition);
    if (o.out.empty()) {
      write_conic(out, problem);
    } else {
      std::ofstream f(o.out);
      if (!f) throw ArgumentError("cannot write " + o.out);
      write_conic(f, problem);
    }
    return kExitOk;
  });
}

}  // namespace lmoment::cli
