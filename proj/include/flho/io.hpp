#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "flho/liealg.hpp"

namespace flho::io {

/// Round-trip-exact decimal form of x (17 significant digits, '.' decimal
/// point, no locale).
std::string format_double(double x);

using Cell = std::variant<std::int64_t, double, std::string>;

std::string format_cell(const Cell& c);

/// Rectangular table with a header row; the one shape every subcommand
/// emits, so CSV and JSON stay in lockstep.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Comma-separated, header row, LF line endings, floats via format_double.
void write_csv(std::ostream& os, const Table& t);

/// JSON document {"schema": 1, "command": ..., "params": {...}, "columns":
/// [...], "rows": [[...]]}; params values are numbers or strings.
struct RunMeta {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
};

void write_json(std::ostream& os, const Table& t, const RunMeta& meta);

/// Writes the table to path (or stdout when path is empty) in the requested
/// format ("csv" or "json"). Throws io_error on filesystem failure.
void write_table(const std::string& path, const std::string& format, const Table& t,
                 const RunMeta& meta);

/// gnuplot script plotting columns ys (1-based CSV column numbers) against
/// column x from csv_path. logx selects a logarithmic x axis.
std::string gnuplot_script(const std::string& csv_path, std::size_t x,
                           const std::vector<std::size_t>& ys, bool logx,
                           const std::string& title);

/// Structure-constants file: {"dim": n, "entries": [[i, j, k, value], ...]}
/// with 0-based indices; omitted entries are zero; the antisymmetric partner
/// of each entry is auto-filled and a conflicting explicit partner is an
/// error. Throws io_error on unreadable files or malformed JSON.
liealg::StructureConstants load_structure_constants(const std::string& path);
std::string structure_constants_json(const liealg::StructureConstants& sc);

/// kappa grids: "LOG:a:b:step" = 10^a .. 10^b in exponent steps,
/// "LIN:a:b:step" = a, a+step, .. b, or a single number. step > 0; the
/// direction follows the endpoints. Throws std::invalid_argument on
/// malformed syntax.
std::vector<double> parse_grid(const std::string& text);

}  // namespace flho::io
