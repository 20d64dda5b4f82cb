#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "signtest/scatter.hpp"

namespace signtest {

/// Parse failure with a 1-based row/column location for diagnostics.
class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(const std::string& what, int row, int col)
      : std::runtime_error(what), row_(row), col_(col) {}
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  int row_;
  int col_;
};

/// Dense numeric matrix, one observation per row, cells separated by
/// whitespace and/or commas. Blank lines are skipped; '#' lines are comments.
/// Ragged rows, non-numeric tokens and non-finite values raise
/// MatrixParseError naming the offending row (and column).
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

/// Column of numbers (same tokenization; any shape collapses row-major).
Vector read_vector_file(const std::string& path);

/// Full-precision decimal rendering (17 significant digits round-trips).
std::string g17(double x);

}  // namespace signtest
