#pragma once
#include <string>
#include <vector>

namespace spinreg::csvio {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns.size()
};

// Shared numeric formatting (12 significant digits) so output is
// byte-reproducible across runs.
std::string format_value(double v);

void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

}  // namespace spinreg::csvio
