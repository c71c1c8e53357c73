#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lmoment/hierarchy.hpp"
#include "lmoment/json_io.hpp"

namespace lmoment::cli {

/// Sweep over atom locations (rows) and atom weights 1 - a for the mixture
/// a * lambda + (1 - a) * (uniform mix of the row's atoms) on [0, 1].
struct TableSpec {
  int which = 1;
  std::vector<std::vector<double>> rows;  // atom locations per row
  std::vector<double> weights;            // ascending
  int dmin = 4;
  int dmax = 7;
  HierarchyConfig config;
};

/// Table 1: one atom at s = 0.0, 0.1, ..., 1.0, columns d = 4..7.
/// Table 2: atoms at (s, s + 0.1), s = 0.1, ..., 0.9, columns d = 5..6.
/// Weights k * step for k = 1 .. round(1 / step).
TableSpec reference_table(int which, double step = 0.1);

struct CellResult {
  std::size_t row = 0;
  double weight = 0.0;
  std::optional<int> first_infeasible;  // smallest d with an Infeasible level
  std::vector<SolveStatus> statuses;    // levels 1..(first_infeasible or dmax)
  double seconds = 0.0;
};

struct TableColumn {
  int d = 0;
  /// Smallest weight w such that every grid weight >= w is detected by level d
  /// (some level <= d Infeasible); empty when the heaviest weight is not.
  std::optional<double> threshold;
  /// Detected weights below the threshold (non-monotone cells).
  std::vector<double> exceptions;
  /// Cells at or above the threshold that had an Indeterminate level <= d.
  int indeterminate = 0;
};

struct TableResult {
  TableSpec spec;
  std::vector<CellResult> cells;                 // row-major, weights ascending
  std::vector<std::vector<TableColumn>> columns;  // [row][d - dmin]
  double max_cell_seconds = 0.0;
};

/// Runs every cell on `threads` workers; the result is in grid order
/// regardless of scheduling.
TableResult run_table(const TableSpec& spec, unsigned threads);

/// Thread count from LMOMENT_THREADS, else the hardware concurrency (>= 1).
unsigned thread_count_from_env();

std::string row_label(const TableSpec& spec, std::size_t row);

/// Markdown and CSV render the same numbers: thresholds with two decimals.
std::string render_markdown(const TableResult& result);
std::string render_csv(const TableResult& result);
nlohmann::json table_to_json(const TableResult& result);

}  // namespace lmoment::cli
