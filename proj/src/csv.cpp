#include "su11/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "su11/errors.hpp"

namespace su11 {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw InvalidParameter("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = c == ',' ? ';' : ' ';
  return s;
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  write_line(os, t.header);
  for (const auto& row : t.rows) write_line(os, row);
}

void write_csv_file(const std::string& path, const Table& t) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_csv(f, t);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace su11
