#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace splitpoint {

struct NumericColumn {
  std::vector<double> values;
  std::size_t index = 0;
  /// Header name when the file has a header row.
  std::optional<std::string> name;
};

/**
 * Reads one numeric column from comma-separated text.
 *
 * A header row is assumed when any cell of the first non-blank row fails to
 * parse as a number. `selector` is matched against header names first, then
 * read as a 0-based index. Blank lines are skipped.
 *
 * Throws ColumnNotFound for an unknown selector and ParseError (with the
 * 1-based line number) for a non-numeric or missing cell.
 */
NumericColumn read_numeric_column(std::istream& in, const std::string& selector);

NumericColumn read_numeric_column_file(const std::string& path, const std::string& selector);

}  // namespace splitpoint
