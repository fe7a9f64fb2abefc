#ifndef PENLEARN_CSV_HPP
#define PENLEARN_CSV_HPP

#include <string>
#include <vector>

namespace penlearn {

// Minimal CSV support for the flat numeric tables this project reads and
// writes. No quoting: none of the declared schemas embed commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index of `name`, or -1.
  int column(const std::string& name) const;
  // Same, but throws FormatError naming the column and file.
  int require_column(const std::string& name, const std::string& file) const;
};

CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Shortest round-trip formatting (std::to_chars). Infinite values are
// rendered as "inf"/"-inf" where a schema allows them.
std::string format_double(double v);

// Accepts "inf"/"-inf"/"nan" literals; `context` names the file/row in errors.
double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

}  // namespace penlearn

#endif
