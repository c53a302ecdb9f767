#include "flho/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "flho/errors.hpp"
#include "json.hpp"

namespace flho::io {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return std::get<std::string>(c);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("Table: row width does not match header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_cell(row[i]);
    }
    os << '\n';
  }
}

namespace {

nlohmann::json cell_to_json(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (std::isfinite(v)) return v;
    return format_double(v);  // JSON has no inf/nan literals
  }
  return std::get<std::string>(c);
}

}  // namespace

void write_json(std::ostream& os, const Table& t, const RunMeta& meta) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["command"] = meta.command;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, val] : meta.params) params[key] = cell_to_json(val);
  doc["params"] = params;
  doc["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& c : row) jr.push_back(cell_to_json(c));
    rows.push_back(jr);
  }
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

void write_table(const std::string& path, const std::string& format, const Table& t,
                 const RunMeta& meta) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("write_table: format must be csv or json");
  auto emit = [&](std::ostream& os) {
    if (format == "csv")
      write_csv(os, t);
    else
      write_json(os, t, meta);
  };
  if (path.empty()) {
    emit(std::cout);
    if (!std::cout) throw io_error("write_table: stdout write failed");
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("write_table: cannot open " + path);
  emit(os);
  os.flush();
  if (!os) throw io_error("write_table: write failed for " + path);
}

std::string gnuplot_script(const std::string& csv_path, std::size_t x,
                           const std::vector<std::size_t>& ys, bool logx,
                           const std::string& title) {
  std::ostringstream ss;
  ss << "set datafile separator ','\n";
  ss << "set key autotitle columnhead\n";
  if (logx) ss << "set logscale x\n";
  ss << "set title '" << title << "'\n";
  ss << "plot ";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i) ss << ", ";
    ss << (i == 0 ? "'" + csv_path + "'" : "''") << " using " << x << ':' << ys[i]
       << " with linespoints";
  }
  ss << '\n';
  return ss.str();
}

liealg::StructureConstants load_structure_constants(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": malformed JSON: " + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
      throw io_error(path + ": expected object with 'dim' and 'entries'");
    const auto dim = doc["dim"].get<std::int64_t>();
    if (dim < 1) throw io_error(path + ": dim must be a positive integer");
    liealg::StructureConstants sc(static_cast<std::size_t>(dim));
    // Remember explicit entries so a conflicting antisymmetric partner is an
    // error rather than a silent overwrite.
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> seen;
    for (const auto& e : doc["entries"]) {
      if (!e.is_array() || e.size() != 4)
        throw io_error(path + ": each entry must be [i, j, k, value]");
      const auto i = e[0].get<std::int64_t>();
      const auto j = e[1].get<std::int64_t>();
      const auto k = e[2].get<std::int64_t>();
      const double v = e[3].get<double>();
      if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
        throw io_error(path + ": entry index out of range");
      const auto key = std::make_tuple(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                       static_cast<std::size_t>(k));
      const auto partner = std::make_tuple(static_cast<std::size_t>(j), static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(k));
      if (auto it = seen.find(key); it != seen.end() && it->second != v)
        throw io_error(path + ": duplicate entry with conflicting value");
      if (auto it = seen.find(partner); it != seen.end() && it->second != -v)
        throw io_error(path + ": entry conflicts with its antisymmetric partner");
      seen[key] = v;
      sc.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
             static_cast<std::size_t>(k), v);
    }
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": malformed structure constants: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": invalid structure constants: " + e.what());
  }
}

std::string structure_constants_json(const liealg::StructureConstants& sc) {
  nlohmann::json doc;
  doc["dim"] = sc.dim();
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < sc.dim(); ++i)
    for (std::size_t j = i + 1; j < sc.dim(); ++j)  // one of each antisymmetric pair
      for (std::size_t k = 0; k < sc.dim(); ++k)
        if (sc.at(i, j, k) != 0.0) entries.push_back({i, j, k, sc.at(i, j, k)});
  doc["entries"] = entries;
  return doc.dump(2);
}

std::vector<double> parse_grid(const std::string& text) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("grid '" + text + "': " + why);
  };
  const bool is_log = text.rfind("LOG:", 0) == 0;
  const bool is_lin = text.rfind("LIN:", 0) == 0;
  if (!is_log && !is_lin) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      throw bad("expected LOG:a:b:step, LIN:a:b:step, or a number");
    }
    if (pos != text.size()) throw bad("trailing characters after number");
    return {v};
  }
  std::istringstream ss(text.substr(4));
  std::string tok;
  double abc[3];
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, tok, ':')) throw bad("expected three ':'-separated numbers");
    std::size_t pos = 0;
    try {
      abc[i] = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw bad("'" + tok + "' is not a number");
    }
    if (pos != tok.size()) throw bad("'" + tok + "' is not a number");
  }
  if (std::getline(ss, tok, ':')) throw bad("too many fields");
  const double a = abc[0], b = abc[1], step = abc[2];
  if (!(step > 0.0)) throw bad("step must be positive");
  const double dir = b >= a ? 1.0 : -1.0;
  const double span = std::abs(b - a);
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
  if (count > 1000000) throw bad("grid too large");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = a + dir * step * static_cast<double>(i);
    out.push_back(is_log ? std::pow(10.0, v) : v);
  }
  return out;
}

}  // namespace flho::io
