#pragma once

#include <string>
#include <vector>

namespace microcell {

/// Numeric table with a header row, written as CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

/// %.12g, the single number format of every output file.
std::string format_number(double value);

}  // namespace microcell
