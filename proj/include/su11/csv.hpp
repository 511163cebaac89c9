#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace su11 {

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Comma separated, '\n' line endings, header first. Fields never contain commas.
void write_csv(std::ostream& os, const Table& t);
/// Throws IoError when the file cannot be written.
void write_csv_file(const std::string& path, const Table& t);

/// Replaces separators and line breaks so free text fits in one field.
std::string csv_safe(std::string s);

}  // namespace su11
