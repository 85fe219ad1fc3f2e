#include "spinreg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinreg::csvio {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const Table& table, const std::string& path) {
  if (table.columns.empty()) throw std::invalid_argument("write_csv: table has no columns");
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw std::invalid_argument("write_csv: row width does not match header");

  std::ofstream out(path, std::ios::binary);  // binary keeps line endings fixed
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_value(row[c]);
    out << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write_csv: write to '" + path + "' failed");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
  Table table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (lineno == 1) {
      table.columns = cells;
      continue;
    }
    if (cells.size() != table.columns.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(table.columns.size()) + " cells, got " +
                               std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty())
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": malformed numeric cell '" + cell + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw std::runtime_error(path + ": empty CSV");
  return table;
}

}  // namespace spinreg::csvio
