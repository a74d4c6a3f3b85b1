#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nuggp/types.hpp"

namespace nuggp {

class CsvError : public std::runtime_error {
public:
  CsvError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
  int line;  // 1-based; 0 when not tied to a line
};

/// Numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  MatrixXd values;
};

/// Strict numeric CSV reader: comma separators, '.' decimal, one header row.
/// Parse failures carry the offending line number.
CsvTable read_csv(const std::string& path);

/// Shortest round-tripping decimal representation of a double.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const MatrixXd& values);

}  // namespace nuggp
