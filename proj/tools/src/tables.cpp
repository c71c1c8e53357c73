#include "tables.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "lmoment/errors.hpp"
#include "lmoment/measures.hpp"

namespace lmoment::cli {
namespace {

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string fixed1(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

CellResult run_cell(const TableSpec& spec, std::size_t row, double weight) {
  const auto start = std::chrono::steady_clock::now();
  const SemialgebraicSet set = SemialgebraicSet::interval(0.0, 1.0);
  MixtureScenario scenario;
  scenario.a = 1.0 - weight;
  const auto& atoms = spec.rows[row];
  for (double s : atoms) scenario.atoms.push_back({{s}, 1.0 / static_cast<double>(atoms.size())});
  const int order = 2 * spec.dmax;
  const MomentVector gamma = box_lebesgue_moments(set.box(), order);
  const MomentVector y = mixture_moments(scenario, set.box(), order);

  HierarchyConfig config = spec.config;
  config.dmax = spec.dmax;
  config.run_all_levels = false;
  config.threads = 1;
  const DetectionReport report = run_detection(set, gamma, y, config);

  CellResult cell;
  cell.row = row;
  cell.weight = weight;
  for (const auto& rec : report.levels) cell.statuses.push_back(rec.status);
  if (report.conclusion.kind == ConclusionKind::NoDensityFrom) cell.first_infeasible = report.conclusion.level;
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

bool detected(const CellResult& cell, int d) { return cell.first_infeasible && *cell.first_infeasible <= d; }

bool indeterminate_up_to(const CellResult& cell, int d) {
  for (std::size_t i = 0; i < cell.statuses.size() && static_cast<int>(i) < d; ++i) {
    if (cell.statuses[i] == SolveStatus::Indeterminate) return true;
  }
  return false;
}

}  // namespace

TableSpec reference_table(int which, double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ArgumentError("weight step must lie in (0, 1]");
  TableSpec spec;
  spec.which = which;
  if (which == 1) {
    for (int k = 0; k <= 10; ++k) spec.rows.push_back({k / 10.0});
    spec.dmin = 4;
    spec.dmax = 7;
  } else if (which == 2) {
    for (int k = 1; k <= 9; ++k) spec.rows.push_back({k / 10.0, (k + 1) / 10.0});
    spec.dmin = 5;
    spec.dmax = 6;
  } else {
    throw ArgumentError("table must be 1 or 2");
  }
  const int count = static_cast<int>(std::lround(1.0 / step));
  if (std::abs(count * step - 1.0) > 1e-9) throw ArgumentError("weight step must divide 1");
  for (int k = 1; k <= count; ++k) spec.weights.push_back(k * step);
  return spec;
}

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("LMOMENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    throw ArgumentError(std::string("LMOMENT_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TableResult run_table(const TableSpec& spec, unsigned threads) {
  if (spec.dmin < 1 || spec.dmin > spec.dmax) throw ArgumentError("table needs 1 <= dmin <= dmax");
  TableResult result;
  result.spec = spec;
  const std::size_t nw = spec.weights.size();
  const std::size_t total = spec.rows.size() * nw;
  result.cells.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        result.cells[i] = run_cell(spec, i / nw, spec.weights[i % nw]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& c : result.cells) result.max_cell_seconds = std::max(result.max_cell_seconds, c.seconds);
  result.columns.resize(spec.rows.size());
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    for (int d = spec.dmin; d <= spec.dmax; ++d) {
      TableColumn col;
      col.d = d;
      std::size_t k = nw;  // index of the threshold weight
      while (k > 0 && detected(result.cells[r * nw + k - 1], d)) --k;
      if (k < nw) col.threshold = spec.weights[k];
      for (std::size_t i = 0; i < k; ++i) {
        if (detected(result.cells[r * nw + i], d)) col.exceptions.push_back(spec.weights[i]);
      }
      for (std::size_t i = k; i < nw; ++i) {
        if (indeterminate_up_to(result.cells[r * nw + i], d)) ++col.indeterminate;
      }
      result.columns[r].push_back(std::move(col));
    }
  }
  return result;
}

std::string row_label(const TableSpec& spec, std::size_t row) {
  const auto& atoms = spec.rows.at(row);
  if (atoms.size() == 1) return fixed1(atoms[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? "," : "") + fixed1(atoms[i]);
  return s + ")";
}

std::string render_markdown(const TableResult& result) {
  const auto& spec = result.spec;
  std::ostringstream os;
  os << "Table " << spec.which << ": smallest atom weight 1-a detected with moments up to order 2d\n\n";
  os << "| atoms \\ moments |";
  for (int d = spec.dmin; d <= spec.dmax; ++d) os << ' ' << 2 * d << " |";
  os << "\n|---|";
  for (int d = spec.dmin; d <= spec.dmax; ++d) os << "---|";
  os << '\n';
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    os << "| " << row_label(spec, r) << " |";
    for (const auto& col : result.columns[r]) {
      os << ' ';
      if (col.threshold) {
        os << "1-a >= " << fixed2(*col.threshold);
      } else {
        os << "none";
      }
      if (!col.exceptions.empty()) {
        os << " (also";
        for (double w : col.exceptions) os << ' ' << fixed2(w);
        os << ')';
      }
      if (col.indeterminate) os << " [" << col.indeterminate << " indeterminate]";
      os << " |";
    }
    os << '\n';
  }
  return os.str();
}

std::string render_csv(const TableResult& result) {
  const auto& spec = result.spec;
  std::ostringstream os;
  os << "table,atoms,moments,d,threshold,exceptions,indeterminate\n";
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    for (const auto& col : result.columns[r]) {
      os << spec.which << ",\"" << row_label(spec, r) << "\"," << 2 * col.d << ',' << col.d << ',';
      if (col.threshold) os << fixed2(*col.threshold);
      os << ",\"";
      for (std::size_t i = 0; i < col.exceptions.size(); ++i) os << (i ? " " : "") << fixed2(col.exceptions[i]);
      os << "\"," << col.indeterminate << '\n';
    }
  }
  return os.str();
}

nlohmann::json table_to_json(const TableResult& result) {
  using nlohmann::json;
  const auto& spec = result.spec;
  json rows = json::array();
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    json cols = json::array();
    for (const auto& col : result.columns[r]) {
      cols.push_back({{"d", col.d},
                      {"moments", 2 * col.d},
                      {"threshold", col.threshold ? json(*col.threshold) : json(nullptr)},
                      {"exceptions", col.exceptions},
                      {"indeterminate", col.indeterminate}});
    }
    rows.push_back({{"atoms", spec.rows[r]}, {"label", row_label(spec, r)}, {"columns", cols}});
  }
  json cells = json::array();
  for (const auto& c : result.cells) {
    json st = json::array();
    for (auto s : c.statuses) st.push_back(to_string(s));
    cells.push_back({{"row", c.row},
                     {"weight", c.weight},
                     {"first_infeasible_d", c.first_infeasible ? json(*c.first_infeasible) : json(nullptr)},
                     {"statuses", st},
                     {"seconds", c.seconds}});
  }
  return {{"table", spec.which},
          {"dmin", spec.dmin},
          {"dmax", spec.dmax},
          {"weights", spec.weights},
          {"rows", rows},
          {"cells", cells},
          {"max_cell_seconds", result.max_cell_seconds},
          {"tolerances", lmoment::json::to_json(spec.config.solver)}};
}

}  // namespace lmoment::cli
