#include "nuggp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nuggp {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string()
                                             : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path, 0);
  std::string line;
  int lineno = 0;
  CsvTable table;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (table.header.empty()) {
      table.header = fields;
      continue;
    }
    if (fields.size() != table.header.size())
      throw CsvError(path + ": wrong number of fields at line " + std::to_string(lineno),
                     lineno);
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const char* s = fields[i].c_str();
      char* end = nullptr;
      row[i] = std::strtod(s, &end);
      if (end == s || *end != '\0')
        throw CsvError(path + ": cannot parse '" + fields[i] + "' at line " +
                           std::to_string(lineno),
                       lineno);
    }
    rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw CsvError(path + ": missing header row", 0);
  table.values.resize(static_cast<Index>(rows.size()),
                      static_cast<Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const MatrixXd& values) {
  if (static_cast<Index>(header.size()) != values.cols())
    throw std::invalid_argument("write_csv: header/column mismatch");
  std::ofstream out(path);
  if (!out) throw CsvError("cannot open " + path + " for writing", 0);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c)
      out << (c ? "," : "") << format_double(values(r, c));
    out << "\n";
  }
}

}  // namespace nuggp
