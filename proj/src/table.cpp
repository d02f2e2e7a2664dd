#include "microcell/table.hpp"

#include <cstdio>

#include "microcell/errors.hpp"

namespace microcell {

void Table::add_row(std::vector<double> row) {
  if (row.size() != header.size()) throw ValidationError("table row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace microcell
