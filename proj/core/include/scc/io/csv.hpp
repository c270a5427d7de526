#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace scc::io {

/// Comma-separated table. Lines starting with '#' are comments; comments of
/// the form "# key=value" are collected into `meta`. The first non-comment
/// line is the header. Blank lines are skipped.
struct CsvTable {
  std::string source; ///< file name used in diagnostics
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;               ///< 1-based line of each row
  std::vector<std::vector<std::size_t>> row_columns; ///< 1-based column of each field

  /// Index of a header column; ParseError (at the header line) if absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
  [[nodiscard]] bool has_column(std::string_view name) const noexcept;
  /// Field parsed as a finite double; ParseError naming line and column otherwise.
  [[nodiscard]] double number(std::size_t row, std::size_t col) const;
  /// Field parsed as a non-negative integer.
  [[nodiscard]] unsigned long long integer(std::size_t row, std::size_t col) const;
  [[nodiscard]] const std::string &text(std::size_t row, std::size_t col) const;
  /// Meta value parsed as a double; ParseError if missing or malformed.
  [[nodiscard]] double meta_number(const std::string &key) const;

  std::size_t header_line = 0;
};

/// Throws ParseError for rows whose field count differs from the header.
[[nodiscard]] CsvTable parse_csv(std::string_view text, std::string source = "<input>");

[[nodiscard]] std::string read_text_file(const std::string &path);
/// Writes atomically enough for our purposes (truncate + write); IoError on failure.
void write_text_file(const std::string &path, std::string_view content);
[[nodiscard]] CsvTable read_csv(const std::string &path);

/// Shortest representation that parses back to the same double.
[[nodiscard]] std::string format_double(double x);

} // namespace scc::io
