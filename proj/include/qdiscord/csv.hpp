#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Comma-separated tables with '#' metadata lines.
namespace qdiscord::csv {

// 12 significant digits; scientific notation below 1e-4 in magnitude.
std::string format_number(double x);
std::string format_bool(bool b);

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;  // "# key: value"
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

void write(std::ostream& out, const Table& t);

// Writes to path; throws ArgumentError when the file cannot be opened.
void write_file(const std::string& path, const Table& t);

// Inverse of write. Throws ValidationError on ragged rows or a missing header.
Table parse(std::istream& in);

}  // namespace qdiscord::csv
