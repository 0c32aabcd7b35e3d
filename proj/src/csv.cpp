#include "qdiscord/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qdiscord/errors.hpp"

namespace qdiscord::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ',';
    s += fields[i];
  }
  return s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  if (std::abs(x) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.11e", x);
  else
    std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw DimensionError("row length differs from the header");
  rows.push_back(std::move(row));
}

void write(std::ostream& out, const Table& t) {
  for (const auto& [k, v] : t.metadata) out << "# " << k << ": " << v << '\n';
  out << join(t.header) << '\n';
  for (const auto& row : t.rows) out << join(row) << '\n';
}

void write_file(const std::string& path, const Table& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file: " + path);
  write(f, t);
  if (!f) throw ArgumentError("failed writing output file: " + path);
}

Table parse(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const auto colon = body.find(": ");
      if (colon == std::string::npos)
        t.metadata.emplace_back(body, "");
      else
        t.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    auto fields = split(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) throw ValidationError("ragged CSV row: " + line);
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw ValidationError("CSV has no header row");
  return t;
}

}  // namespace qdiscord::csv
