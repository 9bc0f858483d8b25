#include "splitpoint/csv.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

#include "splitpoint/error.hpp"

namespace splitpoint {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.emplace_back(trim(std::string_view(line).substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_index(const std::string& s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

NumericColumn read_numeric_column(std::istream& in, const std::string& selector) {
  NumericColumn col;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  bool resolved = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);

    if (first) {
      first = false;
      bool header = false;
      for (const auto& c : cells) header = header || !parse_number(c);
      if (header) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i] == selector) {
            col.index = i;
            resolved = true;
            break;
          }
        }
        if (!resolved) {
          const auto idx = parse_index(selector);
          if (!idx || *idx >= cells.size()) {
            throw Error(ErrorCode::ColumnNotFound, "no column '" + selector + "' in header");
          }
          col.index = *idx;
          resolved = true;
        }
        col.name = cells[col.index];
        continue;
      }
      const auto idx = parse_index(selector);
      if (!idx) {
        throw Error(ErrorCode::ColumnNotFound,
                    "column '" + selector + "' requested by name but the file has no header");
      }
      if (*idx >= cells.size()) {
        throw Error(ErrorCode::ColumnNotFound, "column index " + selector + " out of range");
      }
      col.index = *idx;
      resolved = true;
    }

    if (col.index >= cells.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing column " +
                                             std::to_string(col.index));
    }
    const auto v = parse_number(cells[col.index]);
    if (!v) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                             ": non-numeric value '" + cells[col.index] + "'");
    }
    col.values.push_back(*v);
  }
  return col;
}

NumericColumn read_numeric_column_file(const std::string& path, const std::string& selector) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_numeric_column(in, selector);
}

}  // namespace splitpoint
