#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace symclone {

using Cell = std::variant<double, std::string>;

/// Named table with a fixed column order.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::logic_error on a width mismatch.
  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& col) const;
  const std::string& text(std::size_t row, const std::string& col) const;
};

/// 12 significant digits, "%.12g". nan/inf spelled "nan", "inf", "-inf".
std::string format_number(double v);
/// A cell as it appears in CSV.
std::string format_cell(const Cell& c);
/// Numeric text becomes a double, everything else stays a string.
Cell parse_cell(const std::string& text);

void write_csv(std::ostream& os, const Table& table);
/// Reads a header line and rows; blank lines and lines starting with '#' are skipped.
/// Throws DataError with a line number on ragged rows.
Table read_csv(std::istream& is, std::string name = {});

/// Writes `content` to `path` through a sibling temporary file and a rename.
/// Throws DataError naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace symclone
