#include "scc/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scc/errors.hpp"

namespace scc::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

} // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ParseError(source, header_line, 1, "missing required column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const noexcept {
  for (const auto &h : header) {
    if (h == name) return true;
  }
  return false;
}

const std::string &CsvTable::text(std::size_t row, std::size_t col) const {
  return rows.at(row).at(col);
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string &s = text(row, col);
  double v = 0.0;
  const auto *end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(source, row_lines[row], row_columns[row][col],
                     "expected a number in column '" + header[col] + "', got '" + s + "'");
  }
  return v;
}

unsigned long long CsvTable::integer(std::size_t row, std::size_t col) const {
  const std::string &s = text(row, col);
  unsigned long long v = 0;
  const auto *end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, row_lines[row], row_columns[row][col],
                     "expected a non-negative integer in column '" + header[col] + "', got '" +
                         s + "'");
  }
  return v;
}

double CsvTable::meta_number(const std::string &key) const {
  const auto it = meta.find(key);
  if (it == meta.end()) throw ParseError(source, 1, 1, "missing header comment '# " + key + "='");
  double v = 0.0;
  const auto &s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(source, 1, 1, "header comment '" + key + "' is not a number: '" + s + "'");
  }
  return v;
}

CsvTable parse_csv(std::string_view text, std::string source) {
  CsvTable t;
  t.source = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        t.meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
      }
      continue;
    }

    std::vector<std::string> fields;
    std::vector<std::size_t> cols;
    std::size_t start = 0;
    const std::size_t offset = static_cast<std::size_t>(line.data() - raw.data());
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view f =
          line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      const std::string_view tf = trim(f);
      const std::size_t lead = static_cast<std::size_t>(tf.data() - f.data());
      fields.emplace_back(tf);
      cols.push_back(offset + start + lead + 1);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    if (t.header.empty()) {
      t.header = std::move(fields);
      t.header_line = line_no;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError(t.source, line_no, cols.back(),
                       "expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.row_lines.push_back(line_no);
    t.row_columns.push_back(std::move(cols));
  }
  if (t.header.empty()) throw ParseError(t.source, line_no == 0 ? 1 : line_no, 1, "no header line");
  return t;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

CsvTable read_csv(const std::string &path) { return parse_csv(read_text_file(path), path); }

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

} // namespace scc::io
